import os
import stat

from tempus.core import EEEdge, EERelation, EventMention, Span, TemporalGraph, TimexMention, TimexType
from tempus.evaluate import PRF
from tempus.io import atomic_write_bytes, atomic_write_text
from tempus.plotting import plot_bench, plot_prf, plot_timeline
from tempus.timeline import build_timeline


def _graph():
    nodes = (EventMention(0, 0, "explode", "exploded", Span(0, 8)), EventMention(1, 1, "die", "died", Span(10, 14)),
             TimexMention(2, Span(20, 24), TimexType.DATE, "1998", "1998"))
    return TemporalGraph(nodes, (EEEdge(0, 1, EERelation.BEFORE),))


def test_figures_are_byte_deterministic(tmp_path):
    g = _graph()
    tl = build_timeline(g)
    plot_timeline(tl, g, tmp_path / "a.png", "doc")
    plot_timeline(tl, g, tmp_path / "b.png", "doc")
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()
    assert (tmp_path / "a.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_report_figures(tmp_path):
    plot_prf({"timex_extraction": PRF(3, 1, 2), "timex_normalization": 0.5}, tmp_path / "prf.png")
    plot_bench({"chunker": 0.2, "regex": 0.5}, tmp_path / "bench.png")
    assert (tmp_path / "prf.png").stat().st_size > 0 and (tmp_path / "bench.png").stat().st_size > 0


def test_empty_timeline_figure(tmp_path):
    g = TemporalGraph(())
    plot_timeline(build_timeline(g), g, tmp_path / "empty.png")
    assert (tmp_path / "empty.png").exists()


def test_atomic_write_creates_parents_and_honours_umask(tmp_path):
    path = tmp_path / "deep" / "dir" / "f.txt"
    old = os.umask(0o022)
    try:
        atomic_write_text(path, "hello")
    finally:
        os.umask(old)
    assert path.read_text() == "hello"
    assert stat.S_IMODE(path.stat().st_mode) == 0o644
    atomic_write_bytes(path, b"bye")
    assert path.read_bytes() == b"bye"
    assert [p.name for p in path.parent.iterdir()] == ["f.txt"]
