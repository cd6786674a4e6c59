#!/usr/bin/env python3
# Copyright 2026 The mecheval Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Regenerates the JSON and CSV fixtures under tests/data.

Run from this directory: python3 make_fixtures.py. The output is committed;
tests never run this script.
"""

import csv
import hashlib
import json
import os
import shutil

HERE = os.path.dirname(os.path.abspath(__file__))


def write_json(rel, doc):
    path = os.path.join(HERE, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=False)
        f.write("\n")


def write_csv(rel, header, rows):
    path = os.path.join(HERE, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def reset(rel):
    shutil.rmtree(os.path.join(HERE, rel), ignore_errors=True)


def accession(name, salt=""):
    digest = hashlib.sha1((salt + name.lower()).encode()).hexdigest()
    return "UniProt:Q%05d" % (int(digest[:8], 16) % 100000)


CHEMICALS = {"arsenic", "PI(3,4,5)3"}


def entity(name, wrong=False, in_model=None):
    if name is None:
        return None
    if name in CHEMICALS:
        digest = hashlib.sha1(name.encode()).hexdigest()
        cid = int(digest[:6], 16) % 1000000 + (7 if wrong else 0)
        doc = {"entity_type": "chemical", "entity_text": name,
               "grounded_entity_id": "PubChem:%d" % cid}
    else:
        doc = {"entity_type": "protein", "entity_text": name,
               "grounded_entity_id": accession(name, "x" if wrong else "")}
    if in_model is not None:
        doc["in_model"] = in_model
    return doc


def interaction(a, kind, b, mod=None, locations=None):
    doc = {"participant_a": a, "interaction_type": kind, "participant_b": b,
           "negative_information": False}
    if kind in ("adds_modification", "inhibits_modification"):
        doc["modification"] = {"modification_type": mod or "phosphorylation"}
    if kind == "translocates":
        frm, to = locations or ("cytoplasm", "plasma membrane")
        doc["from_location"] = frm
        doc["to_location"] = to
    return doc


def card(card_id, paper, inter, source_type="machine", rank=None, text=None):
    doc = {"card_id": card_id, "paper_id": paper, "source": "fixture",
           "source_type": source_type}
    if rank is not None:
        doc["rank"] = rank
    doc.update(inter)
    doc["relationship_to_model"] = "extension"
    doc["evidence"] = [{"text": text or "Evidence sentence for %s." % card_id,
                        "section": "results"}]
    return doc


# ---------------------------------------------------------------------------
# Gold cards with per-system match grades.

B3 = [
    (78, 2, 2, 2, 0, "Grb7", "binds", "EphB1"),
    (147, 2, 2, 1, 0, "c-Src", "binds", "IQGAP1"),
    (71, 2, 2, 0, 0, "p85", "binds", "Abi1"),
    (95, 2, 2, 0, 0, "EPHB1", "increases", "p52^Shc"),
    (4, 2, 1, 1, 0, "mTOR", "adds_modification", "p53"),
    (24, 2, 0, 2, 0, "Akt1", "adds_modification", "Cby"),
    (12, 2, 0, 0, 0, "ATR", "binds", "ATRIP"),
    (54, 2, 0, 0, 0, None, "adds_modification", "Egfr"),
    (64, 2, 0, 0, 0, "ZAP70", "adds_modification", "pp29/30 / TRIM"),
    (93, 2, 0, 0, 0, "SMYD3", "adds_modification", "MAP3K2"),
    (180, 2, 0, 0, 0, "ERK1", "adds_modification", "FBW7"),
    (182, 2, 0, 0, 0, "Eps8", "binds", "E3b1"),
    (213, 2, 0, 0, 0, "HDAC3", "decreases", "GM-CSF"),
    (91, 1, 1, 1, 2, "EGFR", "adds_modification", "Shc"),
    (14, 1, 1, 0, 0, "LAT", "increases", "p38"),
    (34, 1, 1, 0, 0, "BCR", "translocates", "Bam32"),
    (52, 1, 1, 0, 0, "ITGB1", "adds_modification", "FOXO1"),
    (181, 1, 0, 0, 2, "SYK", "adds_modification", "HS1"),
    (188, 1, 0, 0, 1, "EGFR", "adds_modification", "EGFR"),
    (87, 1, 0, 0, 0, "Ret9", "increases_activity", "AKT1"),
    (168, 0, 2, 2, 0, "VEGFR-2", "binds", "c-Src"),
    (9, 0, 2, 1, 0, "EphB1", "increases_activity", "ERK1"),
    (163, 0, 2, 0, 0, "arsenic", "increases", "cdk4"),
    (165, 0, 2, 0, 0, "Bam32", "binds", "PI(3,4,5)3"),
    (55, 0, 1, 0, 1, "Fyn", "increases_activity", "Pyk2"),
    (83, 0, 0, 1, 0, "YWHAZ", "binds", "Cby"),
    (143, 0, 0, 1, 0, "SMYD3", "increases_activity", "MAPK1"),
    (13, 0, 0, 0, 2, "Cas", "binds", "FAK"),
]

SYSTEMS = "ABCD"

# Same-family substitutes used to vary full and partial candidates.
SIBLING = {
    "adds_modification": "increases_activity",
    "increases_activity": "adds_modification",
    "increases": "decreases",
    "decreases": "increases",
}

# Unrelated interaction types for distractors.
OTHER_FAMILY = {
    "binds": "increases",
    "translocates": "binds",
    "increases": "binds",
    "decreases": "binds",
    "adds_modification": "binds",
    "increases_activity": "binds",
}


def recase(name):
    if name is None:
        return None
    return " " + (name.lower() if name != name.lower() else name.upper()) + " "


def full_candidate(sid, sys_index, a, kind, b):
    variant = (sid + sys_index) % 3
    if a is None:
        return interaction(None, kind, entity(b))
    if variant == 0:
        return interaction(entity(a), kind, entity(b))
    if variant == 1:
        ea, eb = entity(a), entity(b)
        ea["entity_text"] = recase(a)
        eb["entity_text"] = recase(b)
        return interaction(ea, kind, eb)
    if kind in ("binds", "translocates"):
        return interaction(entity(b), kind, entity(a))
    return interaction(entity(a), SIBLING.get(kind, kind), entity(b))


def partial_candidate(sid, sys_index, kind, b):
    variant = (sid + sys_index) % 2
    k = SIBLING.get(kind, kind) if variant else kind
    return interaction(None, k, entity(b))


def distractor(sid, sys_index, a, kind, b):
    if (sid + sys_index) % 2 == 0:
        return interaction(entity(a) if a else None, OTHER_FAMILY[kind], entity(b))
    return interaction(entity(a) if a else None, kind, entity("ZNF%d" % (sid * 10 + sys_index)))


# Rows checked for the ensemble analysis have hand-written candidates.
ENSEMBLE_CANDIDATES = {
    91: {
        "A": interaction(None, "adds_modification", entity("Shc")),
        "B": interaction(None, "adds_modification", entity("Shc")),
        "C": interaction(None, "increases_activity", entity("Shc")),
        "D": interaction(entity("EGFR"), "adds_modification", entity("Shc")),
    },
    188: {
        "A": interaction(None, "adds_modification", entity("EGFR")),
        "D": interaction(None, "adds_modification", entity("EGFR", wrong=True)),
    },
    12: {
        "A": interaction(entity("ATR", wrong=True), "binds", entity("ATRIP")),
    },
}

# Uncorrected human cards for the same sentences.
HUMAN_CARDS = {
    91: interaction(entity("EGFR", wrong=True), "adds_modification", entity("Shc", wrong=True)),
    188: interaction(entity("EGFR", wrong=True), "adds_modification", entity("EGFR")),
    12: interaction(entity("ATR"), "binds", entity("ATRIP", wrong=True)),
}


def make_appendix_b():
    reset("appendix_b")
    gold = []
    for sid, *_grades, a, kind, b in B3:
        loc = ("cytoplasm", "plasma membrane") if kind == "translocates" else None
        gold.append(card("gold-%d" % sid, "S%d" % sid,
                         interaction(entity(a), kind, entity(b), locations=loc),
                         source_type="human", text="Sentence %d." % sid))
    write_json("appendix_b/gold.json", gold)
    for si, system in enumerate(SYSTEMS):
        cards = []
        for row in B3:
            sid, grades, (a, kind, b) = row[0], row[1:5], row[5:]
            grade = grades[si]
            override = ENSEMBLE_CANDIDATES.get(sid)
            if override is not None:
                if system in override:
                    cards.append(card("sys%s-%d" % (system, sid), "S%d" % sid, override[system]))
                continue
            if grade == 2:
                inter = full_candidate(sid, si, a, kind, b)
            elif grade == 1:
                inter = partial_candidate(sid, si, kind, b)
            elif (sid + si) % 3 == 0:
                continue
            else:
                inter = distractor(sid, si, a, kind, b)
            cards.append(card("sys%s-%d" % (system, sid), "S%d" % sid, inter))
        write_json("appendix_b/system_%s.json" % system, cards)
    human = [card("human-%d" % sid, "S%d" % sid, inter, source_type="human")
             for sid, inter in HUMAN_CARDS.items()]
    write_json("appendix_b/human.json", human)


# ---------------------------------------------------------------------------
# Reference set and four submissions with published overlap arithmetic.

PAPERS = ["PMC1847818", "PMC2323346", "PMC2742809", "PMC3191193", "PMC3305885",
          "PMC3423347", "PMC3690480", "PMC3804475", "PMC4052680", "PMC4218874"]

GENES = ["AKT1", "BRAF", "CDK2", "CHEK1", "CSK", "DOK1", "EGFR", "EPHA2", "ERBB2", "ERK2",
         "FGFR1", "FOXO3", "FYN", "GAB1", "GRB2", "GSK3B", "HRAS", "IRS1", "JAK2", "JNK1",
         "KRAS", "LCK", "MAP2K1", "MDM2", "MET", "MTOR", "MYC", "NCK1", "NRAS", "PDK1",
         "PIK3CA", "PLCG1", "PTEN", "PTPN11", "RAF1", "RB1", "RHOA", "RPS6KB1", "SHC1", "SOS1",
         "SRC", "STAT3", "SYK", "TP53", "VAV1", "YES1", "ZAP70", "ABL1", "ATM", "BCL2",
         "CBL", "CRK", "EZR", "FAK1", "IKBKB", "ITK", "LYN", "PAK1", "PRKCA", "RAC1"]

DPB_KINDS = [("binds", None), ("adds_modification", "phosphorylation"),
             ("inhibits_modification", "phosphorylation")]


def make_refs():
    refs = []
    cursor = 0

    def take():
        nonlocal cursor
        name = GENES[cursor % len(GENES)]
        cursor += 1
        return name

    for p, paper in enumerate(PAPERS):
        n_direct = 2 if p == len(PAPERS) - 1 else 3
        n_embedded = 3 if p == 0 else 2
        for j in range(n_direct):
            kind, mod = DPB_KINDS[(p + j) % 3]
            a, b = take(), take()
            refs.append({"id": "%s-d%d" % (paper, j + 1), "paper_id": paper,
                         "category": "direct_phospho_bind",
                         "interaction": interaction(entity(a), kind, entity(b), mod)})
        for j in range(n_embedded):
            a, b, c = take(), take(), take()
            if j % 2 == 0:
                inner = interaction(entity(b), "adds_modification", entity(c))
                inter = interaction(entity(a), "increases_activity",
                                    {"entity_type": "interaction", "interaction": inner})
                category = "indirect"
            else:
                inner = interaction(entity(a), "binds", entity(b))
                inter = interaction({"entity_type": "interaction", "interaction": inner},
                                    "adds_modification", entity(c))
                category = "complex_composite"
            refs.append({"id": "%s-i%d" % (paper, j + 1), "paper_id": paper,
                         "category": category, "interaction": inter})
    assert sum(r["category"] == "direct_phospho_bind" for r in refs) == 29
    assert sum(r["category"] != "direct_phospho_bind" for r in refs) == 21
    return refs


def matching_card(ref, variant):
    inter = json.loads(json.dumps(ref["interaction"]))
    if variant % 2 == 1 and inter["interaction_type"] == "binds":
        inter["participant_a"], inter["participant_b"] = inter["participant_b"], inter["participant_a"]
    elif variant % 2 == 1 and isinstance(inter["participant_a"], dict) and \
            inter["participant_a"].get("entity_type") == "protein":
        inter["participant_a"]["entity_text"] = inter["participant_a"]["entity_text"].lower()
    return inter


# team -> (direct matched, embedded matched, incorrect cards,
#          incorrect cards that still match an otherwise unmatched reference)
TABLE5 = {
    "sub1": (19, 4, 8, 2),
    "sub2": (22, 0, 13, 1),
    "sub3": (16, 0, 19, 0),
    "sub4": (18, 0, 22, 0),
}


def make_table5():
    reset("table5")
    refs = make_refs()
    write_json("table5/refset.json", {"references": refs})
    direct = [r for r in refs if r["category"] == "direct_phospho_bind"]
    embedded = [r for r in refs if r["category"] != "direct_phospho_bind"]
    judgments = {}
    for t, (team, (n_direct, n_embedded, n_incorrect, n_decoy)) in enumerate(TABLE5.items()):
        offset = 3 * t
        chosen = [direct[(offset + i) % len(direct)] for i in range(n_direct)]
        chosen += [embedded[(offset + i) % len(embedded)] for i in range(n_embedded)]
        chosen_ids = {r["id"] for r in chosen}
        unmatched = [r for r in direct if r["id"] not in chosen_ids]
        by_paper = {p: [] for p in PAPERS}
        verdicts = []
        for i, ref in enumerate(chosen):
            cid = "%s-m%02d" % (team, i + 1)
            by_paper[ref["paper_id"]].append((cid, matching_card(ref, i)))
            verdicts.append((cid, "largely_correct"))
        for i in range(n_decoy):
            ref = unmatched[i]
            cid = "%s-w%02d" % (team, i + 1)
            by_paper[ref["paper_id"]].append((cid, matching_card(ref, 0)))
            verdicts.append((cid, "incorrect"))
        fill = 0
        for i in range(n_incorrect - n_decoy):
            while len(by_paper[PAPERS[fill]]) >= 10:
                fill += 1
            cid = "%s-x%02d" % (team, i + 1)
            inter = interaction(entity("ZNF%d" % (100 * t + 2 * i)), "binds",
                                entity("ZNF%d" % (100 * t + 2 * i + 1)))
            by_paper[PAPERS[fill]].append((cid, inter))
            verdicts.append((cid, "incorrect"))
        if team == "sub2":
            # Unranked behind ten ranked cards in its paper, so never scored
            # even though it would match an unmatched reference.
            paper = next(p for p in PAPERS if len(by_paper[p]) == 10)
            extra = next(r for r in unmatched[n_decoy:] if r["paper_id"] == paper)
            by_paper[paper].append(("sub2-r11", matching_card(extra, 0)))
        for paper, entries in by_paper.items():
            for rank, (cid, inter) in enumerate(entries, start=1):
                write_json("table5/%s/%s/%s.card.json" % (team, paper, cid),
                           card(cid, paper, inter, rank=rank if rank <= 10 else None))
        write_json("table5/%s/submission.json" % team,
                   {"team_id": team, "condition": "machine_only"})
        judgments[team] = [{"card_id": cid, "revision": 0, "verdict": v,
                            "judge": "human:curator", "dialect": "phase2"}
                           for cid, v in verdicts]
    write_json("table5/judgments.json", judgments)


# ---------------------------------------------------------------------------
# Perturbation table: the twenty published rows plus distractors.

TABLE7 = [
    (1, "901", "3", "MEK1/2", "MAPK_pT202", 0.468),
    (2, "AK", "10", "AKT", "AKT_pS473_V", 0.140),
    (3, "AK", "10", "AKT", "AKT_pT308_V", 0.241),
    (4, "AK", "5", "AKT", "GSK3a_b_pS21", 0.440),
    (5, "AK", "10", "AKT", "S6_pS235_V", 0.274),
    (6, "AK", "10", "AKT", "S6_pS240_V", 0.418),
    (7, "RO", "7", "PKC", "GSK3a_b_pS21", 1.586),
    (8, "RO", "7", "PKC", "S6_pS235_V", 0.301),
    (9, "RO", "7", "PKC", "S6_pS240_V", 0.468),
    (12, "SR", "2.4", "SRC", "4EBP1_pT37_V", 0.442),
    (13, "SR", "4.8", "SRC", "CHK2_pT68", 1.749),
    (14, "Tm", "0.6", "mTOR", "AKT_pS473_V", 3.187),
    (15, "Tm", "0.6", "mTOR", "AKT_pT308_V", 2.187),
    (16, "Tm", "0.6", "mTOR", "p70S6K_pT389_V", 0.331),
    (17, "Tm", "0.6", "mTOR", "S6_pS235_V", 0.058),
    (18, "Tm", "0.6", "mTOR", "S6_pS240_V", 0.050),
    (19, "ZS", "1.2", "PI3K", "AKT_pS473_V", 0.204),
    (20, "ZS", "1.2", "PI3K", "p70S6K_pT389_V", 0.495),
    (21, "ZS", "1.2", "PI3K", "S6_pS235_V", 0.273),
    (22, "ZS", "1.2", "PI3K", "S6_pS240_V", 0.442),
]

TABLE7_DISTRACTORS = [
    ("d01", "AK", "10", "yes", "AKT", "GSK3a_b_pS9", 0.912),
    ("d02", "AK", "5", "yes", "AKT", "PRAS40_pT246", 0.730),
    ("d03", "RO", "7", "yes", "PKC", "MAPK_pT202", 1.120),
    ("d04", "SR", "2.4", "yes", "SRC", "SRC_pY416", 0.501),
    ("d05", "SR", "4.8", "yes", "SRC", "PAXILLIN_pY118", 1.499),
    ("d06", "Tm", "0.6", "yes", "mTOR", "4EBP1_pS65", 0.880),
    ("d07", "ZS", "1.2", "yes", "PI3K", "GSK3a_b_pS21", 0.650),
    ("d08", "901", "3", "yes", "MEK1/2", "S6_pS235_V", 1.050),
    ("d09", "Tm+ZS", "0.6/1.2", "no", "mTOR", "S6_pS235_V", 0.020),
    ("d10", "AK+901", "10/3", "no", "AKT", "MAPK_pT202", 0.210),
    ("d11", "SR+RO", "2.4/7", "no", "SRC", "CHK2_pT68", 2.400),
    ("d12", "AK", "10", "yes", "AKT", "FOXO3_pS318", 1.500),
    ("d13", "RO", "7", "yes", "PKC", "CHK1_pS345", 0.500),
]


def readout(antibody):
    return antibody.split("_")[0]


def make_table7():
    reset("table7")
    rows = []
    published = [(str(n), drug, dose, "yes", target, ab, readout(ab), "%.3f" % fold, "SKMEL133")
                 for n, drug, dose, target, ab, fold in TABLE7]
    noise = [(oid, drug, dose, single, target, ab, readout(ab), "%.3f" % fold, "SKMEL133")
             for oid, drug, dose, single, target, ab, fold in TABLE7_DISTRACTORS]
    # Interleave so selection must preserve input order.
    for i in range(max(len(published), len(noise))):
        if i < len(published):
            rows.append(published[i])
        if i < len(noise):
            rows.append(noise[i])
    write_csv("table7/observations.csv",
              ["obs_id", "treatment", "dose", "is_single_drug", "target", "antibody",
               "readout_entity", "fold_change", "cell_line"], rows)


# ---------------------------------------------------------------------------
# Phase III models and explanations.

def reading(doc, sentence):
    return {"type": "reading", "doc_id": doc, "evidence": [sentence], "reader_id": "reader1"}


def phospho(eid, src, dst, prov):
    return {"id": eid, "source": src, "target": dst, "kind": "adds_modification",
            "modification": "phosphorylation", "effect": "activating", "provenance": prov}


def figure4_model(model_id, knockouts=()):
    entities = [{"id": n, "name": "protein " + n, "grounding": accession("fig4" + n),
                 "roles": ["kinase"] if n in "ABC" else []} for n in "ABCDE"]
    entities.append({"id": "drugA", "name": "drugA", "roles": ["drug"]})
    return {
        "id": model_id,
        "entities": entities,
        "interactions": [
            phospho("e_ab", "A", "B", [{"type": "database", "db_name": "PhosphoSitePlus",
                                        "record_id": "PSP:1001"}]),
            phospho("e_be", "B", "E", [reading("PMID:1", "B phosphorylates E at S10.")]),
            phospho("e_ac", "A", "C", [{"type": "manual", "curator_id": "c1",
                                        "note": "textbook"}]),
            phospho("e_cd", "C", "D", [reading("PMID:2", "C was seen near D.")]),
        ],
        "contexts": [{"cell_line": "SKMEL133", "knockouts": list(knockouts), "mutations": []}],
    }


def make_figure4():
    reset("figure4")
    write_json("figure4/model.json", figure4_model("fig4"))
    write_csv("figure4/observations.csv",
              ["obs_id", "treatment", "dose", "is_single_drug", "target", "antibody",
               "readout_entity", "fold_change", "cell_line"],
              [("1", "drugA", "1", "yes", "A", "E_pS10", "E", "0.300", "SKMEL133"),
               ("2", "drugA", "1", "yes", "A", "D_pS20", "D", "0.250", "SKMEL133")])
    write_json("figure4/explanations.json", {"explanations": [
        {"id": "explanation-1", "submission": "team1", "observation_id": "1",
         "model_id": "fig4", "cell_line": "SKMEL133", "paths": [["e_ab", "e_be"]]},
        {"id": "explanation-2", "submission": "team1", "observation_id": "2",
         "model_id": "fig4", "cell_line": "SKMEL133", "paths": [["e_ac", "e_cd"]]},
    ]})
    write_json("figure4/reviews.json", {"edge:fig4/e_be": True, "edge:fig4/e_cd": False})

    reset("knockout")
    write_json("knockout/model.json", figure4_model("fig4-ko", knockouts=["B"]))
    write_json("knockout/explanations.json", {"explanations": [
        {"id": "ko-1", "submission": "team1", "observation_id": "1",
         "model_id": "fig4-ko", "cell_line": "SKMEL133", "paths": [["e_ab", "e_be"]]},
    ]})
    write_json("knockout/reviews.json", {"edge:fig4-ko/e_be": True})


def make_mtor():
    reset("mtor")
    db = lambda rec: [{"type": "database", "db_name": "PhosphoSitePlus", "record_id": rec}]
    write_json("mtor/model.json", {
        "id": "mtor",
        "entities": [
            {"id": "mTOR", "name": "mTOR", "grounding": "UniProt:P42345", "roles": ["kinase"]},
            {"id": "p70S6K", "name": "p70S6K", "grounding": "UniProt:P23443",
             "roles": ["kinase"]},
            {"id": "S6", "name": "S6", "grounding": "UniProt:P62753"},
            {"id": "Tm", "name": "temsirolimus", "roles": ["drug"]},
        ],
        "interactions": [
            phospho("mtor_p70", "mTOR", "p70S6K", db("PSP:T389")),
            phospho("p70_s6", "p70S6K", "S6", db("PSP:S235")),
        ],
        "contexts": [{"cell_line": "SKMEL133", "knockouts": [], "mutations": []}],
    })
    write_json("mtor/explanations.json", {"explanations": [
        {"id": "mtor-16", "submission": "team1", "observation_id": "16", "model_id": "mtor",
         "cell_line": "SKMEL133", "paths": [["mtor_p70"]]},
        {"id": "mtor-17", "submission": "team1", "observation_id": "17", "model_id": "mtor",
         "cell_line": "SKMEL133", "paths": [["mtor_p70", "p70_s6"]]},
        {"id": "mtor-18", "submission": "team1", "observation_id": "18", "model_id": "mtor",
         "cell_line": "SKMEL133", "paths": [["mtor_p70", "p70_s6"]]},
    ]})


# ---------------------------------------------------------------------------
# Small runs for the CLI, persistence and review API tests.

def make_small_runs():
    reset("phase1")
    paper = "PMC0000001"
    cards = [
        ("c1", interaction(entity("SRC"), "binds", entity("FAK1"))),
        ("c2", interaction(entity("FAK1"), "binds", entity("SRC"))),
        ("c3", interaction(None, "increases", entity("MYC"))),
        ("c4", interaction(entity("AKT1"), "adds_modification", entity("GSK3B"))),
    ]
    for cid, inter in cards:
        write_json("phase1/teamx/%s/%s.card.json" % (paper, cid),
                   card(cid, paper, inter, source_type="human_machine"))
    write_json("phase1/teamx/submission.json", {"team_id": "teamx", "condition": "human_machine"})
    write_json("phase1/judgments.json", {"teamx": [
        {"card_id": "c1", "revision": 0, "verdict": "largely_correct", "judge": "human:r1"},
        {"card_id": "c4", "revision": 0, "verdict": "incorrect", "judge": "human:r1"},
    ]})

    reset("review")
    paper = "PMC0000002"
    refs = [
        {"id": "R1", "paper_id": paper, "category": "direct_phospho_bind",
         "interaction": interaction(entity("GRB2"), "binds", entity("SOS1"))},
        {"id": "R2", "paper_id": paper, "category": "direct_phospho_bind",
         "interaction": interaction(entity("CSK"), "adds_modification", entity("LCK"))},
    ]
    write_json("review/refset.json", {"references": refs})
    write_json("review/rv/submission.json", {"team_id": "rv", "condition": "machine_only"})
    write_json("review/rv/%s/k1.card.json" % paper,
               card("k1", paper, interaction(entity("GRB2"), "binds", entity("SOS1")), rank=1))
    write_json("review/rv/%s/k2.card.json" % paper,
               card("k2", paper, interaction(entity("CSK"), "increases_activity",
                                             entity("LCK", wrong=True)), rank=2))

    reset("malformed")
    write_json("malformed/teambad/submission.json", {"team_id": "teambad", "condition": "machine"})
    write_json("malformed/teambad/P1/ok.card.json",
               card("ok", "P1", interaction(entity("SRC"), "binds", entity("FAK1"))))
    bad = card("bad", "P1", interaction(entity("SRC"), "binds", entity("FAK1")))
    bad["interaction_type"] = "glues"
    del bad["evidence"]
    write_json("malformed/teambad/P1/bad.card.json", bad)

    write_json("tokens.json", {"tokens": {"tok-alice": "alice", "tok-bob": "bob"}})


if __name__ == "__main__":
    make_appendix_b()
    make_table5()
    make_table7()
    make_figure4()
    make_mtor()
    make_small_runs()
