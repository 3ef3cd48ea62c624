"""Offline exporter bridging transformer checkpoints and the pipeline's
exchange formats (TEMB embedding files and prediction CSVs).

The exporter is intentionally stateless: it loads a checkpoint, walks a
JSONL corpus, and writes one output file atomically. The file formats are
the entire boundary with the classification pipeline; neither side imports
the other.
"""

__version__ = "0.1.0"
