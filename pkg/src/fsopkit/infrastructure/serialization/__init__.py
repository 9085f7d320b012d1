"""JSON-Formate"""
