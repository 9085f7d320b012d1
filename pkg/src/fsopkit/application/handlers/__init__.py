"""Command Handlers für fsopkit"""
