import json

import pytest

from posepipe.cli import main


@pytest.fixture(scope="module")
def en_dict(corpus_dirs, tmp_path_factory):
    out = tmp_path_factory.mktemp("dict") / "en.json"
    kp, tg = corpus_dirs["en"]
    assert main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(tg), "--out", str(out)]) == 0
    return out


def test_build_dict_reports_coverage(corpus_dirs, tmp_path, capsys):
    kp, tg = corpus_dirs["zh"]
    out = tmp_path / "zh.json"
    code = main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(tg),
                 "--out", str(out), "--inventory", "pinyin"])
    assert code == 0 and out.exists()
    assert "coverage: 79/79" in capsys.readouterr().out


def test_build_dict_missing_alignment(corpus_dirs, tmp_path, capsys):
    kp, _ = corpus_dirs["en"]
    code = main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(tmp_path / "nope.TextGrid"),
                 "--out", str(tmp_path / "d.json")])
    assert code == 2
    assert "nope.TextGrid" in capsys.readouterr().err


def test_build_dict_even_width(corpus_dirs, tmp_path):
    kp, tg = corpus_dirs["en"]
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"pose_width": 6}))
    code = main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(tg),
                 "--out", str(tmp_path / "d.json"), "--config", str(cfg)])
    assert code == 2


def test_build_dict_malformed_alignment(corpus_dirs, fixtures, tmp_path):
    kp, _ = corpus_dirs["en"]
    code = main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(fixtures / "bad_interval.TextGrid"),
                 "--out", str(tmp_path / "d.json")])
    assert code == 3


def test_synth_me(en_dict, tmp_path):
    out = tmp_path / "me"
    assert main(["synth", "--text", "me", "--dict", str(en_dict), "--out-dir", str(out), "--canvas", "64x48"]) == 0
    poses = json.loads((out / "poses.json").read_text())
    report = json.loads((out / "report.json").read_text())
    assert report["frames"] == len(poses["frames"]) == len(list((out / "frames").iterdir()))
    assert report["timing"] == "model-based"


def test_synth_with_alignment(en_dict, fixtures, tmp_path):
    out = tmp_path / "me"
    code = main(["synth", "--text", "me", "--dict", str(en_dict), "--alignment", str(fixtures / "me.TextGrid"),
                 "--out-dir", str(out), "--no-frames"])
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["frames"] == 50 and report["kept_key_poses"] == report["key_poses"]
    assert not (out / "frames").exists()


def test_synth_oov(en_dict, tmp_path, capsys):
    code = main(["synth", "--text", "qzx", "--dict", str(en_dict), "--out-dir", str(tmp_path / "o")])
    assert code == 3
    assert "QZX" in capsys.readouterr().err


def test_synth_pinyin(corpus_dirs, tmp_path):
    kp, tg = corpus_dirs["zh"]
    d = tmp_path / "zh.json"
    assert main(["build-dict", "--keypoints-dir", str(kp), "--alignment", str(tg), "--out", str(d),
                 "--inventory", "none"]) == 0
    assert main(["synth", "--pinyin", "ni hao", "--dict", str(d), "--out-dir", str(tmp_path / "o"), "--no-frames"]) == 0


def test_synth_needs_input(en_dict, tmp_path):
    assert main(["synth", "--dict", str(en_dict), "--out-dir", str(tmp_path / "o")]) == 2


def test_synth_missing_dict(tmp_path):
    assert main(["synth", "--text", "me", "--dict", str(tmp_path / "x.json"), "--out-dir", str(tmp_path / "o")]) == 2


def test_synth_unwritable(en_dict, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["synth", "--text", "me", "--dict", str(en_dict), "--out-dir", str(blocker / "o")]) == 4


def test_text_and_pinyin_exclusive(en_dict, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["synth", "--text", "me", "--pinyin", "ni", "--dict", str(en_dict), "--out-dir", str(tmp_path)])
    assert info.value.code == 2


def test_demo_corpus(tmp_path):
    assert main(["demo-corpus", "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "english" / "alignment.TextGrid").exists()
