use votecast::corpus::{read_matched_csv, write_matched_csv, IngestConfig, Ingestor, QuerySet};
use votecast::synth::{write_text_corpus, GeneratorConfig, TextConfig};
use votecast::TimeWindow;

fn corpus(foreign: f64) -> (String, usize) {
    let cfg = GeneratorConfig { n_users: 400, geo_probability: 0.3, seed: 9, ..Default::default() };
    let mut buf = Vec::new();
    let truth = write_text_corpus(&cfg, &TextConfig { foreign_fraction: foreign, ..Default::default() }, &mut buf).unwrap();
    (String::from_utf8(buf).unwrap(), truth.n_records)
}

fn ingest(shards: &[&str]) -> (String, votecast::corpus::IngestReport) {
    let window = GeneratorConfig::default().start_month.window();
    let mut ing = Ingestor::new(IngestConfig { window, ..IngestConfig::new(QuerySet::bundled()) });
    for (i, s) in shards.iter().enumerate() {
        ing.ingest_reader(&format!("shard{i}"), s.as_bytes()).unwrap();
    }
    let (records, report) = ing.finish();
    let mut out = Vec::new();
    write_matched_csv(&mut out, &records).unwrap();
    (String::from_utf8(out).unwrap(), report)
}

#[test]
fn every_generated_mention_is_matched_once() {
    let (text, n) = corpus(0.0);
    let (csv, report) = ingest(&[&text]);
    assert_eq!(report.counts.lines as usize, n);
    assert_eq!(report.counts.emitted as usize, n);
    assert_eq!(report.counts.duplicates, 0);
    assert_eq!(read_matched_csv(csv.as_bytes()).unwrap().len(), n);
    assert!(report.stats.geo_users > 0);
}

#[test]
fn only_spanish_survives() {
    let (text, n) = corpus(0.3);
    let (_, report) = ingest(&[&text]);
    let dropped = report.counts.wrong_language as usize;
    assert!(dropped > n / 5 && dropped < n * 2 / 5);
    assert_eq!(report.counts.emitted as usize + dropped, n);
}

#[test]
fn sharding_does_not_change_output() {
    let (text, _) = corpus(0.1);
    let lines: Vec<&str> = text.lines().collect();
    let mid = lines.len() / 3;
    let a = lines[..mid].join("\n");
    let b = lines[mid..].join("\n");
    // Shards in reverse order, with an overlapping duplicate line.
    let b_dup = format!("{b}\n{}", lines[0]);
    let (whole, _) = ingest(&[&text]);
    let (sharded, report) = ingest(&[&b_dup, &a]);
    assert_eq!(whole, sharded);
    assert_eq!(report.counts.duplicates, 1);
}

#[test]
fn window_and_malformed_lines() {
    let lines = [
        r#"{"id": 1, "author_id": 2, "created_at": "2021-05-10T12:00:00Z", "text": "MORENA adelante", "lang": "es"}"#,
        r#"{"id": 2, "author_id": 2, "created_at": "2019-05-10T12:00:00Z", "text": "MORENA adelante", "lang": "es"}"#,
        r#"{"id": 3, "author_id": 2, "created_at": "2021-05-10T12:00:00Z", "text": "sin partido", "lang": "es"}"#,
        r#"{"id": 4, "author_id": 2, "text": "PAN", "lang": "es"}"#,
        "{not json",
    ]
    .join("\n");
    let mut ing = Ingestor::new(IngestConfig { window: TimeWindow::election_2021(), ..IngestConfig::new(QuerySet::bundled()) });
    ing.ingest_reader("x", lines.as_bytes()).unwrap();
    let (records, report) = ing.finish();
    assert_eq!(records.len(), 1);
    let c = report.counts;
    assert_eq!((c.out_of_window, c.unmatched, c.rejected, c.malformed), (1, 1, 1, 1));
}

#[test]
fn empty_input_yields_nothing() {
    let (csv, report) = ingest(&[""]);
    assert_eq!(report.counts.emitted, 0);
    assert!(read_matched_csv(csv.as_bytes()).unwrap().is_empty());
}
