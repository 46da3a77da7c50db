"""Tests for anticode"""
