// Frame specification documents: the JSON format read and written by the CLI.

use starframe::algebra::AlgebraShape;
use starframe::document::FrameSpecDocument;
use starframe::frame::{FrameBounds, OperatorFrame};

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![1])?;
    let frame = OperatorFrame::random(&shape, 1, 2, 1.0, 1.0, 0)?;
    let doc = FrameSpecDocument::from_frame(&frame, Some(&FrameBounds::scalar(1.0, 1.0)?));
    let text = doc.to_json();
    println!("{text}");

    // parsing and re-serializing is byte-exact
    let parsed = FrameSpecDocument::parse(&text)?;
    assert_eq!(parsed.to_json(), text);
    assert_eq!(parsed.frame()?, frame);

    let err = FrameSpecDocument::parse("{ \"format_version\": 1 ").unwrap_err();
    println!("malformed input: {err}");
    Ok(())
}

fn main() {
    run_example().expect("document example");
}
