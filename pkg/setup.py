from setuptools import setup, find_packages, Extension
import os
import re


def get_version():
    with open(os.path.join("gread", "version.py"), encoding="utf-8") as f:
        return re.search(r"__version__ = \"([^\"]+)\"", f.read()).group(1)


def get_extensions():
    """Extensões Cython para todo o pacote gread (apenas com GREAD_CYTHON=1)"""
    if os.getenv('GREAD_CYTHON', '') != '1':
        return []

    from Cython.Build import cythonize

    extensions = []
    # Compilar recursivamente o diretório gread
    for root, dirs, files in os.walk("gread"):
        for file in files:
            if file.endswith(".py") and file != "__init__.py":
                full_path = os.path.join(root, file)

                # Converter caminho para nome de módulo: gread/graph/sparse.py -> gread.graph.sparse
                module_name = os.path.splitext(full_path)[0].replace(os.sep, ".")
                extensions.append(Extension(module_name, [full_path]))

    return cythonize(
        extensions,
        compiler_directives={'language_level': "3", 'always_allow_keywords': True, 'annotation_typing': False},
        build_dir="build",
    )


def get_presets():
    presets_dir = os.path.join("config", "presets")
    return [os.path.join(presets_dir, name) for name in sorted(os.listdir(presets_dir)) if name.endswith(".json")]


setup(
    name="gread",
    version=get_version(),
    description="Graph neural reaction-diffusion networks",
    packages=find_packages(exclude=("tests",)),
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "networkx>=2.6",
        "PyQt5>=5.15",
        "psutil>=5.8",
    ],
    extras_require={
        "test": ["pytest>=7"],
        "cython": ["Cython>=0.29"],
    },
    data_files=[("config/presets", get_presets())],
    entry_points={
        "console_scripts": ["gread=gread.cli.main:main"],
    },
    ext_modules=get_extensions(),
)
