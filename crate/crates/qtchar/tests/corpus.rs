use qtchar::corpus::{default_corpus_dir, format_report, load_corpus, verify_corpus};

#[test]
fn shipped_corpus_passes() {
    let fx = load_corpus(default_corpus_dir()).unwrap();
    assert!(fx.len() >= 50);
    let results = verify_corpus(&fx, "");
    assert!(results.iter().all(|r| r.pass), "{}", format_report(&results));
}

#[test]
fn every_fixture_cites_a_source() {
    for f in load_corpus(default_corpus_dir()).unwrap() {
        assert!(!f.source.trim().is_empty(), "{}", f.id);
    }
}
