"""Coverage-driven test generation for human-robot interaction controllers.

Tests come from three generators (BDI agents, timed-automata model checking,
pseudorandom sequences), run against discrete-event simulations of a
handover controller and a home-care assistant, and are judged by assertion
monitors, code coverage and cross-product coverage.
"""

__version__ = "0.1.0"
