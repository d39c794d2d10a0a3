"""Graphon Entropy"""
