"""Record-and-replay state control and benchmarking for web agents on
stateful site-settings tasks."""

__version__ = "0.1.0"
