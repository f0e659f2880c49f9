# agents/__init__.py
from .router_agent import ComputeResult, RouterAgent, run_compute
from .check_agent import CHECK_NAMES, CheckAgent, CheckResult, run_check

__all__ = [
    'RouterAgent',
    'ComputeResult',
    'run_compute',
    'CheckAgent',
    'CheckResult',
    'CHECK_NAMES',
    'run_check',
]
