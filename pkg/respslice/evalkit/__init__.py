"""
Scoring of extract method suggestions against true occurrences: matching with tolerance, TP/FP/FN counts, overall
and average precision, recall and F1.
"""
from .models import MatchConfig, GroundTruth, MethodScore, EvalReport, DECISIONS, f1, percent
from .scoring import (match, score, score_method, report_from_counts, statement_kinds, load_truths,
                      load_suggestions)
