"""Domain Layer: Modelle, Policies und Services"""
