# ============ config/__init__.py ============
"""Configuration module"""
from .settings import *
