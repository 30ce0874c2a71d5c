use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{AssemblyError, Result};

/// One sequencing read: an id and a nucleotide string over {A, C, G, T}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Read {
    pub id: String,
    pub seq: String,
}

/// Ordered collection of reads with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadSet {
    reads: Vec<Read>,
}

impl ReadSet {
    pub fn new(reads: Vec<Read>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for read in &reads {
            if read.seq.is_empty() {
                return Err(AssemblyError::EmptyRead(read.id.clone()));
            }
            if let Some(ch) = read
                .seq
                .chars()
                .find(|c| !matches!(c, 'A' | 'C' | 'G' | 'T'))
            {
                return Err(AssemblyError::IllegalCharacter {
                    id: read.id.clone(),
                    ch,
                });
            }
            if !seen.insert(read.id.clone()) {
                return Err(AssemblyError::DuplicateId(read.id.clone()));
            }
        }
        Ok(Self { reads })
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    pub fn get(&self, i: usize) -> &Read {
        &self.reads[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Read> {
        self.reads.iter()
    }
}

/// Parse FASTA text: `>` headers, sequence lines concatenated, lowercase
/// normalised. `N` and every other non-ACGT character are rejected.
pub fn parse_fasta(text: &str) -> Result<ReadSet> {
    let mut reads: Vec<Read> = Vec::new();
    let mut current: Option<(String, String)> = None;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            if let Some((id, seq)) = current.take() {
                reads.push(Read { id, seq });
            }
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            if id.is_empty() {
                return Err(AssemblyError::Fasta(format!(
                    "empty header at line {}",
                    line_no + 1
                )));
            }
            current = Some((id, String::new()));
        } else {
            match current.as_mut() {
                Some((_, seq)) => seq.push_str(&line.to_ascii_uppercase()),
                None => {
                    return Err(AssemblyError::Fasta(format!(
                        "sequence before first header at line {}",
                        line_no + 1
                    )))
                }
            }
        }
    }
    if let Some((id, seq)) = current.take() {
        reads.push(Read { id, seq });
    }
    if reads.is_empty() {
        return Err(AssemblyError::Fasta("no records".into()));
    }
    ReadSet::new(reads)
}

/// Render reads as FASTA with 70-column sequence lines.
pub fn write_fasta<'a>(records: impl IntoIterator<Item = (&'a str, &'a str)>) -> String {
    let mut out = String::new();
    for (id, seq) in records {
        out.push('>');
        out.push_str(id);
        out.push('\n');
        for chunk in seq.as_bytes().chunks(70) {
            out.push_str(std::str::from_utf8(chunk).expect("ascii sequence"));
            out.push('\n');
        }
    }
    out
}

/// Error-free sliding-window reads at a fixed stride, so consecutive reads
/// overlap by `read_length − stride`. When the stride does not tile the
/// genome exactly, one extra read anchored at the genome's end keeps the tail
/// covered. `shuffle_seed` optionally permutes read order (the multiset of
/// reads is unchanged).
pub fn synthesize_reads(
    genome: &str,
    read_length: usize,
    stride: usize,
    shuffle_seed: Option<u64>,
) -> Result<ReadSet> {
    if read_length == 0 || read_length > genome.len() {
        return Err(AssemblyError::BadReadLength {
            read_length,
            genome_length: genome.len(),
        });
    }
    if stride == 0 {
        return Err(AssemblyError::BadStride);
    }
    let mut starts: Vec<usize> = (0..)
        .map(|i| i * stride)
        .take_while(|&pos| pos + read_length <= genome.len())
        .collect();
    if starts.last().map(|&pos| pos + read_length) != Some(genome.len()) {
        starts.push(genome.len() - read_length);
    }
    let mut reads: Vec<Read> = starts
        .iter()
        .enumerate()
        .map(|(i, &pos)| Read {
            id: format!("r{i:03}"),
            seq: genome[pos..pos + read_length].to_string(),
        })
        .collect();
    if let Some(seed) = shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        reads.shuffle(&mut rng);
    }
    ReadSet::new(reads)
}
