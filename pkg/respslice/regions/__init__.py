"""
Block based regions of a method: Reach, Dom, boundary blocks and the regions limited to the statements between two
output instructions.
"""
from .models import RegionAnalysis
from .analysis import (reachable_blocks, dominated_blocks, boundary_blocks, region, inter_output_restrict,
                       output_interval)
