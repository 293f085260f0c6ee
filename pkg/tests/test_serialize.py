import json

import pytest
from hypothesis import given

from knighttopo.boardgraph import BoardSpec
from knighttopo.lift import CylinderClass
from knighttopo.search import find_open_tour
from knighttopo.serialize import DocumentError, TourDocument, checksum, deserialize, serialize
from knighttopo.tour import Tour

from .strategies import tour_pool, tours

C21 = Tour.from_pairs(BoardSpec.cylinder(2, 1), (0, 0), [(1, 2), (-1, 2)])


def test_empty_tour_document():
    doc = json.loads(serialize(Tour(BoardSpec.cylinder(1, 1), (0, 0), ())))
    assert doc["moves"] == [] and doc["class"] == {"k": 0}


def test_c21_document():
    data = serialize(C21)
    assert data == (
        b'{"format_version":1,"topology":"cylinder","m":2,"n":1,"closed":true,'
        b'"start":[0,0],"moves":[[1,2],[-1,2]],"class":{"k":4}}\n'
    )
    assert deserialize(data) == C21
    assert TourDocument.from_bytes(data).declared == CylinderClass(4)


def test_round_trip_over_a_hundred_searched_tours():
    pool = tour_pool()
    assert len(pool) >= 100
    for tour in pool:
        data = serialize(tour)
        assert deserialize(data) == tour
        assert serialize(deserialize(data)) == data


@given(tours())
def test_checksum_is_stable(tour):
    assert checksum(tour) == checksum(deserialize(serialize(tour)))
    assert len(checksum(tour)) == 64


def test_open_tour_has_no_class():
    out = find_open_tour(BoardSpec.regular(3, 4), (0, 0), (2, 3)).tour
    obj = json.loads(serialize(out))
    assert obj["closed"] is False and "class" not in obj
    assert deserialize(serialize(out)) == out


def _doc(**changes):
    obj = json.loads(serialize(C21))
    obj.update(changes)
    return json.dumps(obj).encode()


@pytest.mark.parametrize(
    "data",
    [
        b"not json",
        b"[1, 2]",
        _doc(**{"class": {"k": -4}}),
        _doc(**{"class": {"p": 0, "q": 1}}),
        _doc(moves=[[1, 2], [1, 2]]),
        _doc(moves=[[1, 2], [-1, -2]]),
        _doc(format_version=2),
        _doc(closed="yes"),
        _doc(m=2.0),
        _doc(topology="sphere"),
    ],
)
def test_bad_documents_rejected(data):
    with pytest.raises(DocumentError):
        TourDocument.from_bytes(data)
