"""trade-sentinel: a psychological risk engine for personal trading journals.

Labels each trade with a Psychological Risk Index, trains a decision tree
chronologically over the journal, and serves pre-trade risk alerts over a CLI
and HTTP API.
"""

__version__ = "0.1.0"
