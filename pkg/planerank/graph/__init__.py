"""LangGraph workflow module."""
from planerank.graph.verify_state import VerifyGraphState
from planerank.graph.verify_workflow import VerifyWorkflow, verify_graph

__all__ = ["VerifyGraphState", "VerifyWorkflow", "verify_graph"]
