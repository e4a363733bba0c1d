"""stats module"""
