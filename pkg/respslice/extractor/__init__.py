"""
Application of extract method candidates as source to source rewrites.

>>> from respslice import extractor
>>> result = extractor.apply(candidate, program)
>>> print(result.source())
"""
from .models import RefactoredProgram, LOCATIONS
from .rewrite import apply, infer_signature, name_method
