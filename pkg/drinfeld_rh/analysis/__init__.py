"""
Endomorphisms, torsion and the Frobenius polynomial

.. currentmodule:: drinfeld_rh.analysis

.. autosummary::
    :toctree:

    endo
    frobenius
    rh_verify
    torsion

"""
