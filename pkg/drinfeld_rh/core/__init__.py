"""
Exact arithmetic for Drinfeld modules

.. currentmodule:: drinfeld_rh.core

.. autosummary::
    :toctree:

    drinfeld
    errors
    ff
    linalg
    polyring
    skew

"""
