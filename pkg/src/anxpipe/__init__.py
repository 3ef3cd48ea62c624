"""Social-anxiety text classification pipeline.

Subpackages map onto the pipeline stages: corpus ingestion and cleaning,
engineered-feature extraction, the dense-tensor neural kernel, the BiLSTM
and hybrid classifiers, exchange file formats, stacking ensembles, and
evaluation reports. The ``anxpipe`` console script wires them together.
"""

__version__ = "0.1.0"
