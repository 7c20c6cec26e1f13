"""Ordered-division semirings and the tropical monomial instance"""
