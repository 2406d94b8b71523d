"""Test suite for the fault symptom similarity matcher."""
