"""Konfiguration"""
