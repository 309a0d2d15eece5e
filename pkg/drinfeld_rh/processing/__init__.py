"""
Sampling, checks and the verification harness

.. currentmodule:: drinfeld_rh.processing

.. autosummary::
    :toctree:

    checks
    client
    runner
    sampling

"""
