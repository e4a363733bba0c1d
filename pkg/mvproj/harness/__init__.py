"""harness module"""
