# _testing/corpus.py
"""
Access to the MIMPL fixtures of the test suite.
"""
import os

from respslice import lang

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def fixture_source(name: str) -> str:
    with open(fixture_path(name), encoding='utf8') as f:
        return f.read()


def load(name: str) -> lang.Program:
    """
    :param name: The file name of a fixture, e.g. sort_and_normalize.mj.
    :return: The resolved program.
    """
    return lang.parse(fixture_source(name))


def all_fixtures() -> list[str]:
    return sorted(n for n in os.listdir(FIXTURES) if n.endswith('.mj'))
