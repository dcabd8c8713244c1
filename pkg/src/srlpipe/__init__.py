"""Cross-lingual SRL dataset bootstrapping pipeline.

Projects predicted English frame-semantic annotations onto a low-resource
target language across word alignments, filters the projections for
quality, and emits PropBank-style CoNLL-2009 data.
"""

__version__ = "0.1.0"
