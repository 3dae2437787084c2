"""Lexicon, statistics and the corpus pipeline."""
from .lexicon import Lexicon, build_lexicon
from .pipeline import PipelineConfig, PipelineError, PipelineResult, SampleResult, run_pipeline, write_outputs
from .stats import Bar, CoverageCurve, ambiguity_histogram, coverage_curves, type_ranking
