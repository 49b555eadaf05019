import streamlit as st
import random
import sys
import os

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.components import render_data_table, render_metric_header, render_scaling_chart
from src.report_frames import agreement_frame, random_instance, scaling_frame, with_quadratic_bound
from src.rpp_pipeline import PipelineConfig
from src.settings import DEFAULT_SEED, DEFAULT_WORKERS

@st.cache_data
def load_scaling(max_n: int):
    return scaling_frame(range(4, max_n + 1))

def display_scaling_page():
    render_metric_header(
        "Operation scaling",
        "Worst-case tube operation counts on complete graphs, fitted against a·n² + b."
    )
    max_n = st.slider("Largest complete graph", min_value=6, max_value=16, value=10, key="scaling_max_n")
    df, a, b = with_quadratic_bound(load_scaling(max_n), fit_sizes=(4, 5))
    st.write(f"Fitted on n = 4, 5: a = {a:.3f}, b = {b:.3f}")
    render_scaling_chart(df)
    if not df["Within Bound"].all():
        st.warning("Some sizes exceed the fitted bound.")
    render_data_table(df)

    st.subheader("Agreement with brute force")
    col1, col2, col3 = st.columns(3)
    with col1:
        count = st.slider("Random instances", min_value=5, max_value=100, value=20, step=5, key="scaling_count")
    with col2:
        max_vertices = st.slider("Max vertices", min_value=4, max_value=7, value=6, key="scaling_vertices")
    with col3:
        seed = st.number_input("Seed", min_value=0, value=DEFAULT_SEED, step=1, key="scaling_seed")

    if st.button("Run batch", key="scaling_run"):
        rng = random.Random(int(seed))
        instances = [random_instance(rng, rng.randint(4, max_vertices)) for _ in range(count)]
        with st.spinner(f"Solving {count} instances on {DEFAULT_WORKERS} workers..."):
            agreement = agreement_frame(instances, PipelineConfig(seed=int(seed)))
        st.metric("Agreement", f"{int(agreement['Agree'].sum())}/{len(agreement)}")
        render_data_table(agreement)
