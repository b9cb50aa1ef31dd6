"""
Services package holding shared calculator instances.
"""
