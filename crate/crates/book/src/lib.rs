//! Runs the code blocks of the guide in `book/src` as doc-tests.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    groups => "groups.md",
    colorings => "colorings.md",
    constructions => "constructions.md",
    reduction => "reduction.md",
    pipeline => "pipeline.md",
    graphs => "graphs.md",
    cc => "cc.md",
    cli => "cli.md",
    formats => "formats.md",
}
