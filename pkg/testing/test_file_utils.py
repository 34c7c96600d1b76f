import json
import math

import pytest

from conftest import FIXTURES
from src.core.errors import BadShape, InputError, PresentationSyntaxError, UnknownGenerator
from src.utils.file_utils import (
    format_presentation,
    parse_presentation,
    read_generator_map,
    read_presentation,
    save_json_data,
    write_generator_map,
    write_presentation,
)


class TestParsePresentation:
    def test_comments_and_defaults(self):
        matrix = parse_presentation("# header\ngen s t u\n\nm s t = 2   # commuting\n")
        assert matrix.labels == ("s", "t", "u")
        assert matrix.m(0, 1) == 2
        assert matrix.m(0, 2) == math.inf

    def test_reversed_pair(self):
        assert parse_presentation("gen s t\nm t s = 5\n").m(0, 1) == 5

    @pytest.mark.parametrize("text, line", [
        ("gen s t\nm s u = 3\n", 2),
        ("gen s t\nm s s = 3\n", 2),
        ("gen s t\nm s t = 1\n", 2),
        ("gen s t\nm s t = x\n", 2),
        ("gen s t\nm s t = 3\nm t s = 4\n", 3),
        ("m s t = 3\ngen s t\n", 1),
        ("gen s t\ngen u\n", 2),
        ("gen s s\n", 1),
        ("gen s t\nrelation s t\n", 2),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(PresentationSyntaxError) as excinfo:
            parse_presentation(text)
        assert excinfo.value.line_number == line
        assert str(excinfo.value).startswith(f"line {line}:")

    def test_missing_gen_line(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("# nothing here\n")

    def test_format_writes_finite_labels_only(self, twist3):
        assert format_presentation(twist3) == "gen s t u\nm s t = 2\n"
        assert parse_presentation(format_presentation(twist3)) == twist3


class TestPresentationFiles:
    def test_json_encodes_infinity_as_zero(self, tmp_path, twist3):
        path = tmp_path / "twist3.json"
        assert write_presentation(twist3, path)
        data = json.loads(path.read_text())
        assert data['orders'][0][2] == 0
        assert read_presentation(path) == twist3

    def test_json_and_text_agree(self):
        assert read_presentation(FIXTURES / "i2_6.json") == read_presentation(FIXTURES / "i2_6.cox")

    def test_cox_file(self, tmp_path, triangle322):
        path = tmp_path / "nested" / "triangle.cox"
        assert write_presentation(triangle322, path)
        assert read_presentation(path) == triangle322

    def test_unsupported_suffix(self, tmp_path):
        path = tmp_path / "matrix.txt"
        path.write_text("gen s t\n")
        with pytest.raises(InputError):
            read_presentation(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            read_presentation(tmp_path / "absent.cox")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(PresentationSyntaxError):
            read_presentation(path)

    def test_asymmetric_json(self, tmp_path):
        path = tmp_path / "asymmetric.json"
        path.write_text(json.dumps({'generators': ["s", "t"], 'orders': [[1, 3], [4, 1]]}))
        with pytest.raises(InputError):
            read_presentation(path)


class TestGeneratorMapFiles:
    def test_relative_paths(self):
        phi = read_generator_map(FIXTURES / "twist3_map.json")
        assert phi.source == read_presentation(FIXTURES / "twist3.cox")
        assert phi.target.labels == ("st", "t", "u")
        assert phi.images == ((0, 1), (1,), (2,))

    def test_inline_round_trip(self, tmp_path):
        phi = read_generator_map(FIXTURES / "twist4_map.json")
        path = tmp_path / "map.json"
        assert write_generator_map(phi, path)
        assert read_generator_map(path) == phi

    def test_missing_image(self, tmp_path, twist3):
        path = tmp_path / "map.json"
        save_json_data({'source': twist3.to_dict(), 'target': twist3.to_dict(), 'images': {'s': ["s"], 't': ["t"]}}, path)
        with pytest.raises(BadShape):
            read_generator_map(path)

    def test_unknown_image_letter(self, tmp_path, twist3):
        path = tmp_path / "map.json"
        images = {'s': ["s"], 't': ["t"], 'u': ["v"]}
        save_json_data({'source': twist3.to_dict(), 'target': twist3.to_dict(), 'images': images}, path)
        with pytest.raises(UnknownGenerator):
            read_generator_map(path)

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "map.json"
        path.write_text("[1, 2]")
        with pytest.raises(PresentationSyntaxError):
            read_generator_map(path)


def test_json_helpers(tmp_path):
    path = tmp_path / "out" / "data.json"
    assert save_json_data({'b': 1, 'a': [1, 2]}, path)
    assert path.read_text().startswith('{\n  "a"')
    assert json.loads(path.read_text()) == {'a': [1, 2], 'b': 1}
