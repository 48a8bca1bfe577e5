"""Acceptance checks discovered by cli.check_manager"""
