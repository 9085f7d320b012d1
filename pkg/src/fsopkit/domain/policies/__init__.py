"""Domain Policies"""
