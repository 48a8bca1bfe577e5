"""Logging setup and file helpers"""
