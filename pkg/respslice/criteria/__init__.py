"""
Output instructions and the slicing criteria derived from them.
"""
from .models import OutputInstruction, SlicingCriterion, OutputSliceComputation, CATEGORIES, ORIGINS
from .detect import (classify_outputs, output_criteria, node_criteria, other_criteria, method_type, output_map,
                     read_variables)
