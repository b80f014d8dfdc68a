#!/usr/bin/env python3
# Copyright 2026 The kbparse Authors.
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

"""Generates the synthetic throughput fixture under data/synthetic.

Pseudo-words over a three-level concept hierarchy, a seed grammar of under
100 phrase patterns, and a 10,000 sentence corpus of at most 30 tokens per
sentence. Output is a pure function of --seed.
"""

import argparse
import json
import pathlib
import random

SYLLABLES = [
    "ba", "ko", "ri", "ta", "mu", "se", "lo", "ne", "gi", "pa", "du", "fe",
    "zo", "vi", "ha", "ju", "ke", "ma", "no", "su", "te", "wa", "yo", "xi",
]
DETERMINERS = ["the", "a", "this", "that"]


class Words:
    def __init__(self, rng):
        self.rng = rng
        self.used = set(DETERMINERS)

    def fresh(self, syllables):
        while True:
            w = "".join(self.rng.choice(SYLLABLES) for _ in range(syllables))
            if w not in self.used:
                self.used.add(w)
                return w


def build(seed, sentences):
    rng = random.Random(seed)
    words = Words(rng)

    concepts = [(1, "entity"), (2, "quality"), (3, "determiner"), (4, "person")]
    relations = [(2, 1), (3, 1), (4, 1)]
    lexicon = []  # (surface, object id, kind, pos)
    methods = []

    for d in DETERMINERS:
        lexicon.append((d, 3, "concept", "DT"))

    adjectives = [words.fresh(2) for _ in range(40)]
    for a in adjectives:
        lexicon.append((a, 2, "concept", "JJ"))

    names = []
    for i in range(30):
        cid = 50 + i
        name = words.fresh(3).capitalize()
        concepts.append((cid, name.lower()))
        relations.append((cid, 4))
        lexicon.append((name, cid, "concept", "NN"))
        names.append(name)

    nouns = []  # (surface, subcategory id)
    subcategories = []
    next_leaf = 1000
    for top in range(10):
        top_id = 10 + top
        concepts.append((top_id, "category " + words.fresh(2)))
        relations.append((top_id, 1))
        for sub in range(4):
            sub_id = 100 + top * 4 + sub
            concepts.append((sub_id, "kind " + words.fresh(2)))
            relations.append((sub_id, top_id))
            subcategories.append(sub_id)
            for _ in range(5):
                surface = words.fresh(rng.choice([2, 3]))
                concepts.append((next_leaf, surface))
                relations.append((next_leaf, sub_id))
                lexicon.append((surface, next_leaf, "concept", "NN"))
                nouns.append((surface, sub_id))
                next_leaf += 1

    verbs = []
    for i in range(40):
        mid = 5000 + i
        v = words.fresh(2) + "s"
        methods.append((mid, v[:-1]))
        lexicon.append((v, mid, "method", "VV"))
        verbs.append(v)

    heads = [words.fresh(2) for _ in range(40)]
    for i, h in enumerate(heads):
        cid = 3000 + i
        concepts.append((cid, h))
        relations.append((cid, 1))
        lexicon.append((h, cid, "concept", "NN"))

    phrase = [
        ("pos:DT|pos:NN", 1),
        ("pos:JJ|pos:NN", 1),
        ("pos:DT|pos:JJ|pos:NN", 2),
    ]
    compounds = []  # (subcategory, head word)
    for i, sub_id in enumerate(subcategories):
        phrase.append(("concept:%d|word:%s" % (sub_id, heads[i]), 1))
        compounds.append((sub_id, heads[i]))
    fixed = []
    for _ in range(30):
        a = rng.choice(nouns)[0]
        b = rng.choice(heads)
        if ("word:%s|word:%s" % (a, b), 1) in phrase:
            continue
        phrase.append(("word:%s|word:%s" % (a, b), 1))
        fixed.append((a, b))
    assert len(phrase) <= 100

    subsentence = [
        ("NN", "phrase", "d", ""),
        ("NN|VV", "sentence", "d", "nsubj:0:1"),
        ("NN|VV|NN", "sentence", "d", "nsubj:0:1,dobj:1:2"),
        ("VV|NN", "sentence", "d", "dobj:0:1"),
    ]

    members = {}
    for surface, sub_id in nouns:
        members.setdefault(sub_id, []).append(surface)

    noise = [words.fresh(2) for _ in range(60)]

    def noun_phrase():
        r = rng.random()
        noun = rng.choice(nouns)[0]
        if r < 0.15:
            return [rng.choice(names)]
        if r < 0.35:
            return [noun]
        if r < 0.5:
            return [rng.choice(DETERMINERS), noun]
        if r < 0.65:
            return [rng.choice(adjectives), noun]
        if r < 0.75:
            return [rng.choice(DETERMINERS), rng.choice(adjectives), noun]
        if r < 0.9:
            sub_id, head = rng.choice(compounds)
            return [rng.choice(members[sub_id]), head]
        return list(rng.choice(fixed))

    def clause():
        r = rng.random()
        if r < 0.6:
            return noun_phrase() + [rng.choice(verbs)] + noun_phrase()
        if r < 0.75:
            return noun_phrase() + [rng.choice(verbs)]
        if r < 0.85:
            return [rng.choice(verbs)] + noun_phrase()
        tokens = noun_phrase() + [rng.choice(verbs)]
        tokens.insert(rng.randrange(len(tokens) + 1), rng.choice(noise))
        return tokens

    corpus = []
    for _ in range(sentences):
        parts = [" ".join(clause()) for _ in range(rng.choice([1, 1, 2, 2, 3]))]
        text = ", ".join(parts) + "."
        assert len(text.split()) <= 30
        corpus.append(text)

    return {
        "concepts": concepts,
        "relations": relations,
        "methods": methods,
        "lexicon": lexicon,
        "phrase": phrase,
        "subsentence": subsentence,
        "corpus": corpus,
    }


def write(out, data):
    kb = out / "kb"
    grammar = out / "grammar"
    kb.mkdir(parents=True, exist_ok=True)
    grammar.mkdir(parents=True, exist_ok=True)

    def table(path, header, rows):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("\t".join(header) + "\n")
            for row in rows:
                f.write("\t".join(str(c) for c in row) + "\n")

    table(kb / "concepts.tsv", ["id", "name", "properties", "methods", "method_exclusions"],
          [(cid, name, "", "", "") for cid, name in sorted(data["concepts"])])
    table(kb / "methods.tsv", ["id", "name", "objects", "code"],
          [(mid, name, "", "") for mid, name in sorted(data["methods"])])
    table(kb / "words.tsv", ["surface", "object_id", "object_kind", "pos"],
          sorted(data["lexicon"], key=lambda r: (r[0], r[2], r[1], r[3])))
    table(kb / "relations.tsv", ["head_id", "tail_id", "rel_type"],
          [(h, t, "belongs_to") for h, t in sorted(data["relations"])])
    table(grammar / "phrase_patterns.tsv",
          ["id", "features", "core_word_index", "pos_tag", "meaning", "status"],
          [(i + 1, f, core, "NN", "", "accepted")
           for i, (f, core) in enumerate(data["phrase"])])
    table(grammar / "subsentence_patterns.tsv",
          ["parse_str", "ss_type", "ss_type2", "meaning", "status"],
          [(p, t, t2, m, "accepted") for p, t, t2, m in sorted(data["subsentence"])])
    table(grammar / "concept_rules.tsv",
          ["concept_id", "position", "unit", "count", "affix", "pos"], [])
    with open(out / "corpus.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for text in data["corpus"]:
            f.write(json.dumps({"text": text}, ensure_ascii=False) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument("--sentences", type=int, default=10000)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent
                        / "data" / "synthetic")
    args = parser.parse_args()
    write(args.out, build(args.seed, args.sentences))


if __name__ == "__main__":
    main()
