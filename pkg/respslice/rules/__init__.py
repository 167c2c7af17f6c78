"""
The precondition rules deciding which extract method candidates are offered.
"""
from .models import RuleVerdict, OverlapReport, RULES
from .checks import (check_rule1, check_rule2, check_rule3, check_rule4, check_rule5, check_rule6, check_rule7,
                     check_rule8, check_rule9, slice_overlap, free_variables, evaluate, CHECKS)
