"""CLI für fsopkit"""
