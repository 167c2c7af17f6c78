"""
Slice based cohesion (tightness, overlap, coverage), complexity and method census.
"""
from .models import (CohesionReport, ComplexityReport, MethodMetrics, DeltaRow, Census, MODES, NOT_APPLICABLE)
from .compute import (cohesion, complexity, method_metrics, delta_report, metrics_csv, delta_csv, census,
                      out_values, CSV_COLUMNS)
