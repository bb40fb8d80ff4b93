"""Rule-based argumentation mining over medical text."""

__version__ = "0.1.0"
