"""
Submodules
==========

.. autosummary::
    :toctree: _autosummary

    analysis
    core
    processing

"""

__version__ = "0.1.0"
