"""Labour-market-driven OER recommender with quality control and online preference learning."""

__version__ = "0.1.0"
