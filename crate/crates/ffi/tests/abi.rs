use std::ffi::{CStr, CString};
use std::ptr;

use connlab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = connlab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn graph(n: usize, edges: &[(u32, u32)]) -> *mut ConnlabGraph {
    let (s, d): (Vec<u32>, Vec<u32>) = edges.iter().copied().unzip();
    let mut g = ptr::null_mut();
    let st = unsafe { connlab_graph_from_edges(n, s.as_ptr(), d.as_ptr(), s.len(), &mut g) };
    assert_eq!(st, ConnlabStatus::Ok);
    g
}

#[test]
fn spec_validation_codes() {
    unsafe {
        assert_eq!(connlab_spec_validate(c("kout+async+halve").as_ptr()), ConnlabStatus::Ok);
        assert_eq!(connlab_spec_validate(c("none+rem_lock+compress+splice").as_ptr()), ConnlabStatus::Config);
        assert!(last_error().contains("valid combinations"));
        assert_eq!(connlab_spec_validate(ptr::null()), ConnlabStatus::NullPointer);
        let mut rb = 9u8;
        assert_eq!(connlab_spec_is_root_based(c("none+lt_euf").as_ptr(), &mut rb), ConnlabStatus::Ok);
        assert_eq!(rb, 0);
        assert_eq!(connlab_spec_is_root_based(c("hb+sv").as_ptr(), &mut rb), ConnlabStatus::Ok);
        assert_eq!(rb, 1);
    }
}

#[test]
fn static_and_forest_on_two_edges() {
    let g = graph(5, &[(0, 1), (2, 3), (3, 2)]);
    unsafe {
        assert_eq!(connlab_graph_num_vertices(g), 5);
        assert_eq!(connlab_graph_num_edges(g), 2);
        let mut labels = vec![0u32; 5];
        let mut comps = 0usize;
        let st = connlab_static_connectivity(g, c("bfs+lt_prs").as_ptr(), 1, 2, labels.as_mut_ptr(), 5, &mut comps);
        assert_eq!(st, ConnlabStatus::Ok);
        assert_eq!(labels, [0, 0, 2, 2, 4]);
        assert_eq!(comps, 3);

        let st = connlab_static_connectivity(g, c("none+sv").as_ptr(), 1, 1, labels.as_mut_ptr(), 4, ptr::null_mut());
        assert_eq!(st, ConnlabStatus::InvalidArgument);

        let (mut eu, mut ev, mut k) = (vec![0u32; 5], vec![0u32; 5], 0usize);
        let st = connlab_spanning_forest(g, c("none+hooks").as_ptr(), 1, 1, eu.as_mut_ptr(), ev.as_mut_ptr(), 5, &mut k);
        assert_eq!(st, ConnlabStatus::Ok);
        assert_eq!(k, 2);
        let mut got: Vec<_> = (0..k).map(|i| (eu[i].min(ev[i]), eu[i].max(ev[i]))).collect();
        got.sort();
        assert_eq!(got, [(0, 1), (2, 3)]);

        let st = connlab_spanning_forest(g, c("none+lp").as_ptr(), 1, 1, eu.as_mut_ptr(), ev.as_mut_ptr(), 5, &mut k);
        assert_eq!(st, ConnlabStatus::Config);
        connlab_graph_free(g);
        connlab_graph_free(ptr::null_mut());
    }
}

#[test]
fn bad_graph_input() {
    let s = [0u32, 7];
    let d = [1u32, 2];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(connlab_graph_from_edges(3, s.as_ptr(), d.as_ptr(), 2, &mut g), ConnlabStatus::MalformedInput);
        assert!(g.is_null());
        assert_eq!(connlab_graph_from_edges(3, ptr::null(), d.as_ptr(), 2, &mut g), ConnlabStatus::NullPointer);
        assert_eq!(connlab_graph_load(c("/nonexistent/graph.txt").as_ptr(), &mut g), ConnlabStatus::Io);
        assert_eq!(connlab_static_connectivity(ptr::null(), c("none+sv").as_ptr(), 0, 1, ptr::null_mut(), 0, ptr::null_mut()), ConnlabStatus::NullPointer);
    }
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.txt");
    std::fs::write(&p, "# vertices 4\n0 1\n1 2\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(connlab_graph_load(c(p.to_str().unwrap()).as_ptr(), &mut g), ConnlabStatus::Ok);
        assert_eq!(connlab_graph_num_vertices(g), 4);
        connlab_graph_free(g);
    }
}

#[test]
fn incremental_session() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(connlab_session_new(c("none+async").as_ptr(), 0, 1, false, &mut s), ConnlabStatus::Ok);
        let kinds = [CONNLAB_OP_INSERT, CONNLAB_OP_QUERY, CONNLAB_OP_QUERY];
        let u = [0u32, 0, 0];
        let v = [1u32, 1, 5];
        let mut res = [9u8; 3];
        assert_eq!(connlab_session_apply(s, kinds.as_ptr(), u.as_ptr(), v.as_ptr(), 3, res.as_mut_ptr()), ConnlabStatus::Ok);
        assert_eq!(res, [0, 1, 0]);
        let kinds = [CONNLAB_OP_INSERT, CONNLAB_OP_QUERY];
        let (u, v) = ([1u32, 0], [5u32, 5]);
        assert_eq!(connlab_session_apply(s, kinds.as_ptr(), u.as_ptr(), v.as_ptr(), 2, ptr::null_mut()), ConnlabStatus::Ok);
        let n = connlab_session_num_vertices(s);
        assert!(n >= 6);
        let mut labels = vec![0u32; n];
        let mut len = 0;
        assert_eq!(connlab_session_labels(s, labels.as_mut_ptr(), n, &mut len), ConnlabStatus::Ok);
        assert_eq!(len, n);
        assert_eq!(&labels[..6], &[0, 0, 2, 3, 4, 0]);
        let bad = [7u8];
        assert_eq!(connlab_session_apply(s, bad.as_ptr(), u.as_ptr(), v.as_ptr(), 1, ptr::null_mut()), ConnlabStatus::InvalidArgument);
        connlab_session_free(s);

        let mut s2 = ptr::null_mut();
        assert_eq!(connlab_session_new(c("none+lt_euf").as_ptr(), 0, 1, false, &mut s2), ConnlabStatus::Config);
        assert!(s2.is_null());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/connlab.h")).unwrap();
    for name in [
        "connlab_last_error",
        "connlab_spec_validate",
        "connlab_spec_is_root_based",
        "connlab_graph_from_edges",
        "connlab_graph_load",
        "connlab_graph_num_vertices",
        "connlab_graph_num_edges",
        "connlab_graph_free",
        "connlab_static_connectivity",
        "connlab_spanning_forest",
        "connlab_session_new",
        "connlab_session_apply",
        "connlab_session_num_vertices",
        "connlab_session_labels",
        "connlab_session_free",
        "CONNLAB_STATUS_OK",
        "typedef struct ConnlabGraph ConnlabGraph",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
