use dgalab::gallery::{corpus, generate, standard_gallery, Instance};
use dgalab::homology::ResolutionCache;
use dgalab::{spec_io, Field};

#[test]
fn every_gallery_instance_round_trips_through_its_spec() {
    for d in standard_gallery() {
        let g = generate(Field::Rational, &d).unwrap();
        match &g.instance {
            Instance::Ring { algebra, .. } => {
                let back = spec_io::parse_ring(&spec_io::ring_spec(algebra)).unwrap();
                assert_eq!(&*back.algebra, &**algebra, "{}", d.label());
            }
            Instance::Skew(s) => {
                let back = spec_io::parse_skew(&spec_io::skew_spec(s)).unwrap();
                assert_eq!(back.product_list(), s.product_list(), "{}", d.label());
            }
        }
    }
}

#[test]
fn descriptors_round_trip_through_json() {
    for d in standard_gallery() {
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(
            serde_json::from_value::<dgalab::gallery::ExampleDescriptor>(v).unwrap(),
            d
        );
    }
}

#[test]
fn corpus_is_reproducible_from_its_seed() {
    let d = &standard_gallery()[0];
    let alg = generate(Field::Rational, d)
        .unwrap()
        .ring()
        .unwrap()
        .clone();
    let a = corpus(&alg, 7, 6, &ResolutionCache::new()).unwrap();
    let b = corpus(&alg, 7, 6, &ResolutionCache::new()).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.label, y.label);
        assert_eq!(x.module, y.module);
    }
}
