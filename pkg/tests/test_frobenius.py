from khlee.frobenius import FrobeniusData, check_axioms


def test_axioms_hold_symbolically():
    check_axioms()


def test_structure_constants():
    assert FrobeniusData.mul[(1, 1)] == ((1, 1, 0),)  # x*x = t*1
    assert FrobeniusData.comul[0] == ((1, 0, (0, 1)), (1, 0, (1, 0)))
    assert FrobeniusData.comul[1] == ((1, 0, (1, 1)), (1, 1, (0, 0)))
    assert FrobeniusData.counit == {0: 0, 1: 1}
    assert FrobeniusData.label_q(0) == 1
    assert FrobeniusData.label_q(1) == -1
