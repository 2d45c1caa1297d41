"""Environment setup for acmorse."""

from .system import generate_run_id, get_project_dir, parallel_map, setup_environment

__all__ = ["generate_run_id", "get_project_dir", "parallel_map", "setup_environment"]
