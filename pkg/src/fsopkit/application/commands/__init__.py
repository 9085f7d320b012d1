"""Commands für fsopkit"""
