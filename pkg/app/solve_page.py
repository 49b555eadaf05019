import streamlit as st
import pandas as pd
import sys
import os
from dataclasses import replace

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.components import render_answer, render_bar_chart, render_data_table, render_metric_header, render_run_controls
from src.errors import CapacityExceededError, RppError
from src.graph_model import validate
from src.instance_io import decision_json, dump_instance, parse_instance
from src.oracle import bruteforce
from src.report_frames import codebook_frame, complete_instance, operations_frame
from src.rpp_pipeline import PipelineConfig, solve
from src.settings import ORACLE_MAX_VERTICES, logger
from src.tube import AnnealMode
from src.tube_script import print_program
from pydantic import ValidationError

SAMPLE_INSTANCE = dump_instance(complete_instance(4))

def display_solve_page():
    render_metric_header(
        "Solve an instance",
        "Paste or upload a JSON instance, run the tube pipeline and compare it with brute force."
    )

    uploaded = st.file_uploader("Instance file", type=["json"], key="solve_upload")
    default_text = uploaded.getvalue().decode("utf-8") if uploaded is not None else SAMPLE_INSTANCE
    text = st.text_area("Instance JSON", value=default_text, height=240, key="solve_text")
    seed, mode, cap = render_run_controls("solve_")

    if not st.button("Run pipeline", key="solve_run"):
        return

    try:
        instance = validate(parse_instance(text))
    except ValidationError as e:
        st.error(f"Invalid instance document: {e}")
        return
    except RppError as e:
        st.error(str(e))
        return

    config = PipelineConfig(mode=AnnealMode(mode), seed=seed, cap=cap, trace=True, witness=True)
    with st.spinner("Running tube operations..."):
        try:
            decision = solve(instance, config)
        except CapacityExceededError as e:
            st.error(f"Capacity exceeded: {e}")
            return
        except RppError as e:
            st.error(str(e))
            return

    col1, col2 = st.columns(2)
    with col1:
        st.subheader("Pipeline")
        detail = f"witness {decision.witness}, cost {decision.cost}" if decision.witness else ""
        render_answer(decision.answer.value, detail)
        st.metric("Tube operations", decision.stats.total_operations)
        st.metric("Max distinct strands", decision.stats.max_distinct_strands)
        st.caption(f"Wall time {decision.stats.wall_time:.3f}s")
    with col2:
        st.subheader("Brute force")
        if instance.vertices <= ORACLE_MAX_VERTICES:
            result = bruteforce(instance)
            render_answer(result.answer.value, f"min cost {result.min_cost}" if result.feasible else "no circuit")
            if result.answer != decision.answer:
                logger.warning("Pipeline and brute force disagree")
                st.error("Pipeline and brute force disagree")
        else:
            st.info(f"Brute force is limited to {ORACLE_MAX_VERTICES} vertices.")

    ops = operations_frame(decision.stats)
    if not ops.empty:
        render_bar_chart(ops, "Operation", "Count", "Operations executed", "Operation", "Count")

    if decision.codebook is not None:
        render_data_table(codebook_frame(decision.codebook), title="Codebook", expanded=False)

    if decision.trace is not None:
        program = replace(decision.trace, codebook="trace.tube.codebook")
        st.download_button("Download trace script", print_program(program), file_name="trace.tube", key="solve_trace")
        if decision.codebook is not None:
            st.download_button("Download codebook", decision.codebook.dump(), file_name="trace.tube.codebook",
                               key="solve_codebook")
    st.download_button("Download decision JSON", decision_json(decision), file_name="decision.json",
                       key="solve_decision")
    if decision.detect_log:
        render_data_table(pd.DataFrame(decision.detect_log, columns=["Tube", "Detected"]),
                          title="DETECT log", expanded=False)
