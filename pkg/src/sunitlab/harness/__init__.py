"""Experiment layer: run configs, searches, scans and reports."""

from .config import RunConfig, load_config, parse_config
from .mahler import mahler_scan, power_scan
from .search import thm1_search, thm2_verify

__all__ = ["RunConfig", "load_config", "parse_config", "mahler_scan", "power_scan",
           "thm1_search", "thm2_verify"]
