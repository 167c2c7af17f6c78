"""
A reference interpreter for MIMPL, used to check that refactorings preserve behavior.
"""
from .models import MimplObject, TraceEvent, OutputTrace, EquivalenceResult, EVENT_KINDS, render
from .machine import (Interpreter, FuelExhausted, MimplRuntimeError, run, equivalent, random_args, random_inputs,
                      random_value, default_value)
