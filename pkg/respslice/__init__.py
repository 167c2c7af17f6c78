import logging

import respslice.lang
import respslice.graphs
import respslice.regions
import respslice.criteria
import respslice.slicing
import respslice.rules
import respslice.extractor
import respslice.interp
import respslice.metrics
import respslice.evalkit
from respslice.settings import TOOL_VERSION, AnalysisConfig, configure_logging
from respslice.lang import parse, unparse
from respslice.analysis import MethodAnalysis, analyze
from respslice.pipeline import suggest, suggest_method, apply_candidate, SuggestionDocument, CandidateReport

__version__ = TOOL_VERSION


def suggest_source(source: str, config: AnalysisConfig = AnalysisConfig(), file: str = '') -> list[dict]:
    """
    Parses MIMPL source text and suggests extract method refactorings for all of its methods.
    Example:
        >>> documents = suggest_source(open('sort.mj').read())
        >>> documents[0]['candidates'][0]['extracted']
        [2, 3, 4, 5, 6, 7, 8]

    :param source: The source text.
    :param config: The analysis settings.
    :param file: The file name written into the documents.
    :return: The suggestion documents as dictionaries.
    """
    program = parse(source)
    documents = suggest(program, config, file)
    logging.debug(f'Suggested candidates for {len(documents)} methods of "{file or "<source>"}".')
    return [d.to_dict() for d in documents]
