"""Preprocessing and model-serving companion for the sentasm engine.

Turns raw sentences into the engine's parse-artifact files and exposes the
fill-mask and task-model wire protocols over HTTP, with heuristic fallbacks
when no real model is available.
"""

__version__ = "0.1.0"
