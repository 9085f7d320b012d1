"""Application Layer: Commands und Handler"""
