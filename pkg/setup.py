#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CLI do Diretor Inteligente
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="diretor-cli",
    version="0.1.0",
    author="Diego Fornalha",
    author_email="diegofornalha@gmail.com",
    description="Composição automática de vídeos a partir de fotos, vídeos e requisitos do usuário",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["diretor_cli", "diretor_cli.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Topic :: Multimedia :: Video",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
    install_requires=[
        "typer>=0.9.0",
        "rich>=13.0.0",
        "requests>=2.28.0",
        "python-dotenv>=1.0.0",
        "openai>=1.0.0",
        "numpy>=1.24",
        "scipy>=1.10",
        "pillow>=10.1",
        "librosa>=0.10",
        "rapidfuzz>=3.0",
        "opencv-python-headless>=4.8",
    ],
    extras_require={
        "dev": ["pytest>=7.0.0", "pytest-cov>=4.0.0", "ruff>=0.1.0", "pyright>=1.1.0"],
    },
    entry_points={
        "console_scripts": [
            "diretor=diretor_cli.__main__:app",
        ],
    },
)
