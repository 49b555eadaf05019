import streamlit as st
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go
from typing import Optional, Tuple

from src.settings import DEFAULT_CAP, DEFAULT_SEED, MODES

def render_metric_header(title: str, description: str) -> None:
    st.subheader(title)
    st.write(description)

def render_run_controls(key_prefix: str = "") -> Tuple[int, str, int]:
    col1, col2, col3 = st.columns(3)
    with col1:
        seed = st.number_input("Seed", min_value=0, value=DEFAULT_SEED, step=1, key=f"{key_prefix}seed")
    with col2:
        mode = st.selectbox("Annealing mode", MODES, key=f"{key_prefix}mode")
    with col3:
        cap = st.number_input("Strand cap", min_value=1, value=DEFAULT_CAP, step=1000, key=f"{key_prefix}cap")
    return int(seed), mode, int(cap)

def render_data_table(df: pd.DataFrame, title: str = "See raw table data", expanded: bool = True) -> None:
    with st.expander(title, expanded=expanded):
        st.dataframe(data=df, use_container_width=True)

def render_bar_chart(
    df: pd.DataFrame,
    x_col: str,
    y_col: str,
    title: str,
    x_label: str,
    y_label: str
) -> None:
    fig = px.bar(
        df,
        x=x_col,
        y=y_col,
        title=title,
        labels={x_col: x_label, y_col: y_label}
    )
    st.plotly_chart(fig, use_container_width=True)

def render_scaling_chart(df: pd.DataFrame, bound_col: Optional[str] = "Bound") -> None:
    fig = px.scatter(
        df,
        x="n",
        y="Core Operations",
        title="Tube operations per complete graph",
        labels={"n": "Vertices", "Core Operations": "Operations (without sweep)"}
    )
    if bound_col and bound_col in df:
        fig.add_trace(go.Scatter(x=df["n"], y=df[bound_col], mode="lines", name="a·n² + b"))
    st.plotly_chart(fig, use_container_width=True)

def render_answer(answer: str, detail: str = "") -> None:
    if answer == "YES":
        st.success(f"YES {detail}".strip())
    else:
        st.warning(f"NO {detail}".strip())
