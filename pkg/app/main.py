import streamlit as st
import sys
import os

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from app.solve_page import display_solve_page
from app.scaling_page import display_scaling_page
from src.settings import DEFAULT_CAP, DEFAULT_MODE, DEFAULT_SEED, DEFAULT_WORKERS

def display_home():
    st.header("Overview")
    st.markdown("""
    This dashboard runs a simulated DNA test-tube computation that decides Rural Postman instances:

    - **Solve**: encode an instance into strands, run the four filtering phases and compare the answer with brute force
    - **Scaling**: count tube operations on complete graphs and check them against a quadratic bound

    An instance asks for a Hamiltonian circuit that uses every required edge and costs at most the budget.
    """)

    st.subheader("Current Settings")
    st.info(f"""
    - Seed: {DEFAULT_SEED}
    - Annealing mode: {DEFAULT_MODE}
    - Strand cap: {DEFAULT_CAP:,} distinct strands per tube
    - Batch workers: {DEFAULT_WORKERS}
    """)

def main():
    st.set_page_config(
        page_title="Tube Computation Dashboard",
        page_icon="",
        layout="wide"
    )

    with st.sidebar:
        st.subheader("About")
        st.write("Settings come from RPP_* environment variables or a .env file.")
        st.caption("Literal annealing is limited to 4 vertices; large instances may exceed the strand cap.")

    st.title("Tube Computation Dashboard")

    tab1, tab2, tab3 = st.tabs([
        "Overview",
        "Solve",
        "Scaling"
    ])

    with tab1:
        display_home()

    with tab2:
        display_solve_page()

    with tab3:
        display_scaling_page()

if __name__ == "__main__":
    main()
