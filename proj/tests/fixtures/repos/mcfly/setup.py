from setuptools import setup

setup(name="mcfly", version="4.0.0", packages=["mcfly"])
