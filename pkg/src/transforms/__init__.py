"""The abstract transformations applied at each recursion level"""
