"""amr2qa: generate question-answer pairs from AMR-annotated sentences."""

__version__ = "0.1.0"
