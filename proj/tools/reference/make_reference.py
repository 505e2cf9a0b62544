"""Freeze reference tables from RDKit and ScaffoldGraph.

    python3 tools/reference/make_reference.py tests/data/desk_10k.smi tests/data

Writes
  murcko_reference.tsv    input SMILES, RDKit Murcko scaffold SMILES, tag
  fragment_reference.tsv  scaffold SMILES, '|'-joined next-level fragments
"""

import argparse
import pathlib
import random

from rdkit import Chem, RDLogger
from rdkit.Chem import rdMolDescriptors
from rdkit.Chem.Scaffolds import MurckoScaffold

RDLogger.DisableLog("rdApp.*")


def read_corpus(path):
    for line in open(path, encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        yield parts[0], parts[1] if len(parts) > 1 else ""


def exotic_aromaticity(smiles):
    """True when RDKit's aromaticity differs from the engine's model.

    The engine trusts lowercase input and additionally aromatizes Kekule
    six-membered C/N rings; anything else RDKit perceives is out of model.
    """
    raw = Chem.MolFromSmiles(smiles, sanitize=False)
    mol = Chem.MolFromSmiles(smiles)
    if raw is None or mol is None:
        return True
    for atom in raw.GetAtoms():
        if atom.GetIsAromatic() and not mol.GetAtomWithIdx(atom.GetIdx()).GetIsAromatic():
            return True
    for ring in Chem.GetSymmSSSR(mol):
        if not all(mol.GetAtomWithIdx(i).GetIsAromatic() for i in ring):
            continue
        if all(raw.GetAtomWithIdx(i).GetIsAromatic() for i in ring):
            continue
        symbols = {mol.GetAtomWithIdx(i).GetSymbol() for i in ring}
        if len(ring) != 6 or not symbols <= {"C", "N"}:
            return True
    return False


def curated(corpus, limit):
    seen = set()
    out = []
    for smiles, tag in corpus:
        if "." in smiles:
            continue
        mol = Chem.MolFromSmiles(smiles)
        if mol is None:
            continue
        key = Chem.MolToSmiles(mol)
        if key in seen or exotic_aromaticity(smiles):
            continue
        seen.add(key)
        out.append((smiles, tag, mol))
        if len(out) == limit:
            break
    return out


def murcko(mol):
    scaffold = MurckoScaffold.GetScaffoldForMol(mol)
    return Chem.MolToSmiles(scaffold) if scaffold.GetNumAtoms() else ""


def fragments(scaffold_smiles):
    from scaffoldgraph.core.fragment import MurckoRingFragmenter
    from scaffoldgraph.core.scaffold import Scaffold

    mol = Chem.MolFromSmiles(scaffold_smiles)
    parents = MurckoRingFragmenter().fragment(Scaffold(mol))
    return sorted({Chem.MolToSmiles(p.mol) for p in parents})


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("corpus")
    ap.add_argument("out_dir")
    ap.add_argument("--molecules", type=int, default=1000)
    ap.add_argument("--scaffolds", type=int, default=300)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    out_dir = pathlib.Path(args.out_dir)

    picked = curated(read_corpus(args.corpus), args.molecules)
    scaffolds = set()
    with open(out_dir / "murcko_reference.tsv", "w", encoding="utf-8", newline="\n") as f:
        for smiles, tag, mol in picked:
            key = murcko(mol)
            f.write(f"{smiles}\t{key}\t{tag}\n")
            if key:
                ring_count = rdMolDescriptors.CalcNumRings(Chem.MolFromSmiles(key))
                if 2 <= ring_count <= 4:
                    scaffolds.add(key)

    rng = random.Random(args.seed)
    sample = sorted(scaffolds)
    rng.shuffle(sample)
    sample = sorted(sample[: args.scaffolds])
    with open(out_dir / "fragment_reference.tsv", "w", encoding="utf-8", newline="\n") as f:
        for key in sample:
            f.write(f"{key}\t{'|'.join(fragments(key))}\n")


if __name__ == "__main__":
    main()
