"""Domain Models"""
