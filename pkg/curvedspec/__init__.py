"""
curvedspec: oscillators on the hyperbolic plane and their flat-space limit.

Light-front holographic (LFH) spectra, the Higgs/Poschl-Teller II reduction
on the hyperboloid, contraction limits, proton form factors and the
trigonometric Rosen-Morse comparator.
"""

__version__ = "1.0.0"
