"""
The MIMPL language: syntax tree, parser, resolver and pretty printer.
"""
from .models import *
from .grammar import parse_raw
from .resolver import resolve_program, BUILTINS
from .unparse import unparse, unparse_expr, unparse_method, unparse_stmts


def parse(source: str) -> Program:
    """
    Parses, numbers, resolves and type-checks MIMPL source text.

    :param source: The source text of a whole program.
    :return: The resolved program.
    :raises MimplSyntaxError: If the text is not valid MIMPL.
    :raises NameResolutionError: On undeclared or redeclared identifiers.
    :raises MimplTypeError: If the program does not type-check.
    :raises DuplicateMethodError: If two methods share a name.
    """
    return resolve_program(parse_raw(source))


def structurally_equal(a: Program, b: Program) -> bool:
    """
    Compares two programs ignoring source positions and resolution results.

    :param a: A program.
    :param b: Another program.
    :return: True if both programs have the same structure.
    """
    return a == b
