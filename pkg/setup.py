from setuptools import find_packages, setup


with open('README.md', encoding='utf-8') as file:
    long_description = file.read()


setup(
    name='pycdg',
    description='Exact and Monte Carlo mixing experiments for random affine walks modulo p',
    version='1.0.0',
    install_requires=[
        'numpy',
        'scipy',
        'tqdm',
        'yapecs'],
    extras_require={'test': ['pytest']},
    packages=find_packages(exclude=['tests']),
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords=[
        'fourier',
        'markov chain',
        'mixing time',
        'random walk',
        'total variation'],
    classifiers=['License :: OSI Approved :: MIT License'],
    license='MIT')
