import functools

import pytest

import bialgebra_forge as bf


@functools.cache
def corrected_document():
    return bf.load_bundled("corrected")


@functools.cache
def context5():
    return corrected_document().make_context()


@functools.cache
def context3():
    return corrected_document().make_context(order=3)


@functools.cache
def presentation5():
    return corrected_document().build_presentation(context5())


@functools.cache
def presentation3():
    return corrected_document().build_presentation(context3())


@functools.cache
def diagonal5():
    return bf.specialize(presentation5(), {"z1": "z", "z2": "z"})


@functools.cache
def compositions5():
    doc = corrected_document()
    ctx = context5()
    return {
        name: doc.composition_tensor(name, ctx)
        for name in ("mu_100", "mu_001", "delta_010", "delta_001")
    }


@pytest.fixture(scope="session")
def doc():
    return corrected_document()


@pytest.fixture(scope="session")
def ctx():
    return context5()


@pytest.fixture(scope="session")
def presentation():
    return presentation5()


@pytest.fixture(scope="session")
def diagonal():
    return diagonal5()


@pytest.fixture(scope="session")
def comps():
    return compositions5()
