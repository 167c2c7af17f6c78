"""
Backward slicing and the generation of extract method candidates.

Three algorithms produce candidates: output based slicing for methods with several output instructions or output
variables, complete computation slicing and object state slicing for the others.
"""
from .models import Slice, ExtractCandidate
from .slicer import (backward_slice, block_based_slices, output_based_slicing, complete_computation_slices,
                     object_state_slices, partition_duplicated, make_candidate, delivered, variable_union_slice)
