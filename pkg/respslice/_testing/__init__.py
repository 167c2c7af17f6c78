import unittest

from respslice._testing.langTest import LangTest
from respslice._testing.graphsTest import GraphsTest
from respslice._testing.regionsTest import RegionsTest
from respslice._testing.criteriaTest import CriteriaTest
from respslice._testing.slicingTest import SlicingTest
from respslice._testing.rulesTest import RulesTest
from respslice._testing.extractorTest import ExtractorTest
from respslice._testing.interpTest import InterpTest
from respslice._testing.metricsTest import MetricsTest
from respslice._testing.evalkitTest import EvalkitTest
from respslice._testing.pipelineTest import PipelineTest
from respslice._testing.cliTest import CliTest


class InitTests(unittest.TestCase):
    """Dummy test class"""
    pass


if __name__ == '__main__':
    unittest.main()
