"""Test suite for the seqdr package."""
