"""Report-Ausgabe"""
