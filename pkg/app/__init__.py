# module for the streamlit dashboard pages
