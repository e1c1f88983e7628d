"""Numerical Segal-Bargmann transform toolkit for compact quotients of complex-type symmetric spaces."""
__version__ = "0.1.0"
