"""
fsopkit - Rechnerische Verifikation für FS^op-Moduln, Poset-Homologie und Charakterräume
"""
__version__ = "0.1.0"
