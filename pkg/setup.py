from setuptools import setup, find_packages

with open('requirements.txt') as f:
    requirements = [line.split("#")[0].strip() for line in f.read().splitlines()]
    requirements = [r for r in requirements if r]

setup(name='tropocat',
      version='0.1',
      description='Weighted cospan categories, tropical moduli spaces of curves and graph complexes',
      license='MIT',
      packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
      package_data={},
      include_package_data=True,
      install_requires=requirements,
      python_requires='>=3.9',
      zip_safe=False,
      entry_points={
          'console_scripts': ['tropocat=tropocat.cli:main']
      },
      )
