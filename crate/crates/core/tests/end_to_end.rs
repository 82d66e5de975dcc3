use extrudekit::geomkern::{default_band, execute, export_mesh, sample_surface, DEFAULT_SAGITTA};
use extrudekit::imaging::{camera_ring, edge_map, render};
use extrudekit::metrics::{chamfer, cmd_accuracy, execute_tokens, param_accuracy, DEFAULT_ETA};
use extrudekit::pipeline::{dataset_build, generate, Config};
use extrudekit::seqmodel::{decode_logits, dequantize, parse_json, quantize, serialize_json, validate};
use extrudekit::wireframe::{bind, oracle_proposals};
use extrudekit::{DatasetManifest, Logits};

fn small_config() -> Config {
    Config { n_views: 3, image_size: 96, ..Config::default() }
}

#[test]
fn generated_sequences_survive_every_stage() {
    let cfg = small_config();
    for seq in generate(8, 5, &cfg).unwrap() {
        assert!(validate(&seq).valid);
        assert_eq!(parse_json(&serialize_json(&seq)).unwrap(), seq);

        let tokens = quantize(&seq).unwrap();
        let decoded = decode_logits(&Logits::one_hot(&tokens, 4.0)).unwrap();
        assert_eq!(cmd_accuracy(&decoded, &tokens).unwrap(), 1.0);
        assert_eq!(param_accuracy(&decoded, &tokens, DEFAULT_ETA).unwrap(), 1.0);
        assert_eq!(dequantize(&decoded).unwrap(), seq);

        let model = execute(&seq, DEFAULT_SAGITTA).unwrap();
        let again = execute_tokens(&tokens).unwrap();
        let a = sample_surface(&model, 256, default_band(&model), 1).unwrap();
        let b = sample_surface(&again, 256, default_band(&again), 1).unwrap();
        assert_eq!(chamfer(&a, &b).unwrap(), 0.0);

        let normalized = model.normalized();
        let mesh = export_mesh(&normalized, DEFAULT_SAGITTA).unwrap();
        let cams = camera_ring(cfg.n_views, cfg.camera_radius, &cfg.elevations(), cfg.fov(), 96, 96).unwrap();
        for cam in &cams {
            let img = render(&mesh, cam);
            edge_map(&img, cfg.sigma, cfg.t_low, cfg.t_high).unwrap();
            let p = oracle_proposals(&normalized, cam, 0.0, 0.0, 0, 0).unwrap();
            assert_eq!(bind(&p.lines, &p.endpoints, 1e-6).lines.len(), p.lines.len());
        }
    }
}

#[test]
fn dataset_manifest_matches_files() {
    let cfg = small_config();
    let dir = tempfile::tempdir().unwrap();
    let seqs = dir.path().join("seqs");
    std::fs::create_dir_all(&seqs).unwrap();
    for (i, s) in generate(3, 1, &cfg).unwrap().iter().enumerate() {
        std::fs::write(seqs.join(format!("{i}.json")), serialize_json(s)).unwrap();
    }
    let out = dir.path().join("out");
    let built = dataset_build(&seqs, &out, &cfg).unwrap();
    assert_eq!(built.counts.built, 3);
    assert_eq!(built.counts.views, 9);
    let loaded = DatasetManifest::load(&out).unwrap();
    assert_eq!(loaded.counts.built, 3);
    assert!(loaded.verify(&out).is_empty());
}
