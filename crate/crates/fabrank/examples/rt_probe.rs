use fabrank::data::*;
fn main() {
    let dir = std::env::temp_dir().join("rt_probe");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("manifest.jsonl");
    let records: Vec<_> = (1..=5).map(|i| generate_synthetic_fabric(7, &format!("fab-{i:04}"))).collect();
    save_manifest(&records, &path, &FileStamp { seed: 7, config_hash: "t".into() }).unwrap();
    let loaded = load_manifest(&path).unwrap();
    for (a, b) in records.iter().zip(loaded.iter()) {
        if a != b {
            println!("record {} differs", a.fabric_id);
            if a.position != b.position { println!("  position {:?} vs {:?}", a.position, b.position); }
            if a.attributes != b.attributes { println!("  attributes differ"); }
            if a.latent != b.latent { println!("  latent {:?} vs {:?}", a.latent, b.latent); }
            for (sa, sb) in a.sessions.iter().zip(b.sessions.iter()) {
                if sa != sb {
                    println!("  session {} differs", sa.press_index);
                    for (fa, fb) in sa.frames.iter().zip(sb.frames.iter()) {
                        if fa != fb { println!("    frame {:?} vs {:?}", fa, fb); break; }
                    }
                    for (pa, pb) in sa.pressure.iter().zip(sb.pressure.iter()) {
                        if pa != pb { println!("    pressure {:?} vs {:?}", pa, pb); break; }
                    }
                }
            }
            break;
        }
    }
    println!("done");
}
