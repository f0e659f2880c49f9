# support/__init__.py
"""Support layer: exact series algebra, errors, job configuration and I/O helpers"""

from .errors import MirrorError, SeriesError, ShapeViolation, ValidationError
from .hbar_laurent import HbarLaurent, Rat
from .pclass import PClass, invert_unit
from .log_q_series import LogQSeries, coeff, d_dt, exp_series, invert_map, shift_t
from .job_config import JobConfig, format_insertion, parse_insertion
from .knowledge_base import KnowledgeBase, get_knowledge_base
from .response_synthesizer import ResponseSynthesizer, get_synthesizer

__all__ = [
    'MirrorError',
    'SeriesError',
    'ShapeViolation',
    'ValidationError',
    'HbarLaurent',
    'Rat',
    'PClass',
    'invert_unit',
    'LogQSeries',
    'coeff',
    'd_dt',
    'exp_series',
    'invert_map',
    'shift_t',
    'JobConfig',
    'format_insertion',
    'parse_insertion',
    'KnowledgeBase',
    'ResponseSynthesizer',
    'get_knowledge_base',
    'get_synthesizer',
]
