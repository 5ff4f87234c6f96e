#!/usr/bin/env python3
# Copyright 2026 The OpenKV Authors.
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

"""Regenerates the hand-built parse fixtures in this directory.

Each sentence is written as (form, upos, head, deprel) rows with 0-based
heads (root points at itself). Character offsets are computed by aligning
forms against the sentence text, so the JSONL and CoNLL-U outputs always
agree with the text.
"""
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent

SEC31 = dict(
    document_id="refinance",
    sentence_id="1",
    text="In connection with the refinance we reduced the loan amount by $6.8 million.",
    tokens=[
        ("In", "ADP", 6, "prep"),
        ("connection", "NOUN", 0, "pobj"),
        ("with", "ADP", 1, "prep"),
        ("the", "DET", 4, "det"),
        ("refinance", "NOUN", 2, "pobj"),
        ("we", "PRON", 6, "nsubj"),
        ("reduced", "VERB", 6, "ROOT"),
        ("the", "DET", 9, "det"),
        ("loan", "NOUN", 9, "compound"),
        ("amount", "NOUN", 6, "dobj"),
        ("by", "ADP", 6, "prep"),
        ("$", "SYM", 13, "nmod"),
        ("6.8", "NUM", 13, "compound"),
        ("million", "NUM", 10, "pobj"),
        (".", "PUNCT", 6, "punct"),
    ],
    entities=[("$6.8 million", "MONEY")],
    gold=[],
)

S1 = dict(
    document_id="lending",
    sentence_id="1",
    text=("In October 2019, the Company increased the borrowing capacity on the "
          "revolving credit loan by $33,000 increasing the available credit "
          "facility from $60,000 to $93,000."),
    tokens=[
        ("In", "ADP", 6, "prep"),
        ("October", "PROPN", 0, "pobj"),
        ("2019", "NUM", 1, "nummod"),
        (",", "PUNCT", 6, "punct"),
        ("the", "DET", 5, "det"),
        ("Company", "PROPN", 6, "nsubj"),
        ("increased", "VERB", 6, "ROOT"),
        ("the", "DET", 9, "det"),
        ("borrowing", "NOUN", 9, "compound"),
        ("capacity", "NOUN", 6, "dobj"),
        ("on", "ADP", 9, "prep"),
        ("the", "DET", 14, "det"),
        ("revolving", "ADJ", 14, "amod"),
        ("credit", "NOUN", 14, "compound"),
        ("loan", "NOUN", 10, "pobj"),
        ("by", "ADP", 6, "prep"),
        ("$", "SYM", 17, "nmod"),
        ("33,000", "NUM", 15, "pobj"),
        ("increasing", "VERB", 6, "advcl"),
        ("the", "DET", 22, "det"),
        ("available", "ADJ", 22, "amod"),
        ("credit", "NOUN", 22, "compound"),
        ("facility", "NOUN", 18, "dobj"),
        ("from", "ADP", 18, "prep"),
        ("$", "SYM", 25, "nmod"),
        ("60,000", "NUM", 23, "pobj"),
        ("to", "ADP", 25, "prep"),
        ("$", "SYM", 28, "nmod"),
        ("93,000", "NUM", 26, "pobj"),
        (".", "PUNCT", 6, "punct"),
    ],
    entities=[("$33,000", "MONEY"), ("$60,000 to $93,000", "MONEY")],
    gold=[("$33,000", ["capacity on the revolving credit loan"]),
          ("$60,000 to $93,000", ["available credit facility"])],
)

# "of the loan balance" hangs off "respectively" and "of repayment" off the
# verb, as PP attachment commonly comes out of a parser for this sentence.
S2 = dict(
    document_id="lending",
    sentence_id="2",
    text=("If the loan is paid during months 13-24 or 25-36 and then a penalty of "
          "2% and 1%, respectively, of the loan balance will be charged on the "
          "date of repayment."),
    tokens=[
        ("If", "SCONJ", 4, "mark"),
        ("the", "DET", 2, "det"),
        ("loan", "NOUN", 4, "nsubjpass"),
        ("is", "AUX", 4, "auxpass"),
        ("paid", "VERB", 29, "advcl"),
        ("during", "ADP", 4, "prep"),
        ("months", "NOUN", 5, "pobj"),
        ("13-24", "NUM", 6, "nummod"),
        ("or", "CCONJ", 7, "cc"),
        ("25-36", "NUM", 7, "conj"),
        ("and", "CCONJ", 29, "cc"),
        ("then", "ADV", 29, "advmod"),
        ("a", "DET", 13, "det"),
        ("penalty", "NOUN", 29, "nsubjpass"),
        ("of", "ADP", 13, "prep"),
        ("2", "NUM", 16, "nummod"),
        ("%", "NOUN", 14, "pobj"),
        ("and", "CCONJ", 16, "cc"),
        ("1", "NUM", 19, "nummod"),
        ("%", "NOUN", 16, "conj"),
        (",", "PUNCT", 13, "punct"),
        ("respectively", "ADV", 13, "advmod"),
        (",", "PUNCT", 13, "punct"),
        ("of", "ADP", 21, "prep"),
        ("the", "DET", 26, "det"),
        ("loan", "NOUN", 26, "compound"),
        ("balance", "NOUN", 23, "pobj"),
        ("will", "AUX", 29, "aux"),
        ("be", "AUX", 29, "auxpass"),
        ("charged", "VERB", 29, "ROOT"),
        ("on", "ADP", 29, "prep"),
        ("the", "DET", 32, "det"),
        ("date", "NOUN", 30, "pobj"),
        ("of", "ADP", 29, "prep"),
        ("repayment", "NOUN", 33, "pobj"),
        (".", "PUNCT", 29, "punct"),
    ],
    entities=[("13-24 or 25-36", "DATE"), ("2% and 1%", "PERCENT")],
    gold=[("13-24 or 25-36", ["loan is paid during months"]),
          ("2% and 1%", ["penalty of the loan balance"])],
)

# The coordinated "rate" carries a subject label of its own.
S3 = dict(
    document_id="lending",
    sentence_id="3",
    text=("The weighted-average remaining lease term and discount rate related "
          "to the Company’s lease liabilities as of September 26, 2020 were "
          "10.3 years and 2.0%, respectively."),
    tokens=[
        ("The", "DET", 6, "det"),
        ("weighted", "VERB", 3, "npadvmod"),
        ("-", "PUNCT", 3, "punct"),
        ("average", "ADJ", 6, "amod"),
        ("remaining", "VERB", 6, "amod"),
        ("lease", "NOUN", 6, "compound"),
        ("term", "NOUN", 23, "nsubj"),
        ("and", "CCONJ", 6, "cc"),
        ("discount", "NOUN", 9, "compound"),
        ("rate", "NOUN", 23, "nsubj"),
        ("related", "VERB", 9, "acl"),
        ("to", "ADP", 10, "prep"),
        ("the", "DET", 13, "det"),
        ("Company", "PROPN", 15, "poss"),
        ("’s", "PART", 13, "case"),
        ("lease", "NOUN", 16, "compound"),
        ("liabilities", "NOUN", 11, "pobj"),
        ("as", "ADP", 10, "prep"),
        ("of", "ADP", 17, "prep"),
        ("September", "PROPN", 18, "pobj"),
        ("26", "NUM", 19, "nummod"),
        (",", "PUNCT", 19, "punct"),
        ("2020", "NUM", 19, "nummod"),
        ("were", "AUX", 23, "ROOT"),
        ("10.3", "NUM", 25, "nummod"),
        ("years", "NOUN", 23, "attr"),
        ("and", "CCONJ", 25, "cc"),
        ("2.0", "NUM", 28, "nummod"),
        ("%", "NOUN", 25, "conj"),
        (",", "PUNCT", 23, "punct"),
        ("respectively", "ADV", 23, "advmod"),
        (".", "PUNCT", 23, "punct"),
    ],
    entities=[("10.3 years", "DATE"), ("2.0%", "PERCENT")],
    gold=[("10.3 years", ["remaining lease term"]),
          ("2.0%", ["discount rate"])],
)

# Scripted reader answers for the lending corpus. The first four rows fix
# the confidences that decide ownership of the two amounts in sentence 1;
# the rest are arbitrary values whose only role is to carry the answers.
READER_ROWS = [
    (S1, "How much is borrowing capacity on revolving credit loan ?", "$33,000", 0.946),
    (S1, "How much is borrowing capacity ?", "$33,000", 0.824),
    (S1, "How much is revolving credit loan ?", "$33,000", 0.856),
    (S1, "How much is available credit facility ?", "$60,000 to $93,000", 0.5762),
    (S2, "What is loan balance ?", "the date of repayment", 0.31),
    (S2, "When is loan balance ?", "on the date of repayment", 0.42),
    (S2, "What is penalty of % ?", "2% and 1%", 0.38),
    (S2, "What is 13-24 or 25-36 ?", "loan is paid during months", 0.47),
    (S2, "What is 2% and 1% ?", "2", 0.29, "2%"),
]


def align(sentence):
    text = sentence["text"]
    cursor = 0
    tokens = []
    for i, (form, upos, head, deprel) in enumerate(sentence["tokens"]):
        start = text.index(form, cursor)
        end = start + len(form)
        cursor = end
        tokens.append(dict(i=i, text=form, pos=upos, head=head, deprel=deprel,
                           start=start, end=end))
    entities = []
    for etext, etype in sentence["entities"]:
        start = text.index(etext)
        entities.append(dict(start=start, end=start + len(etext), text=etext,
                             etype=etype))
    gold = []
    for etext, keys in sentence["gold"]:
        gold.append(dict(entity_start=text.index(etext), entity_text=etext,
                         keys=keys))
    return tokens, entities, gold


def jsonl_record(sentence):
    tokens, entities, gold = align(sentence)
    return dict(document_id=sentence["document_id"],
                sentence_id=sentence["sentence_id"], text=sentence["text"],
                tokens=tokens, entities=entities, gold=gold)


def conllu_block(sentence):
    tokens, entities, _ = align(sentence)
    lines = [f"# sent_id = {sentence['sentence_id']}",
             f"# text = {sentence['text']}",
             "# entities = " + json.dumps(entities, ensure_ascii=False)]
    for t in tokens:
        head = 0 if t["head"] == t["i"] else t["head"] + 1
        lines.append("\t".join([str(t["i"] + 1), t["text"], "_", t["pos"], "_",
                                "_", str(head), t["deprel"], "_", "_"]))
    return "\n".join(lines) + "\n\n"


def dump_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    lending = [S1, S2, S3]
    dump_jsonl(HERE / "lending.jsonl", [jsonl_record(s) for s in lending])
    dump_jsonl(HERE / "refinance.jsonl", [jsonl_record(SEC31)])

    with open(HERE / "lending.conllu", "w", encoding="utf-8") as f:
        f.write("# newdoc id = lending\n")
        for s in lending:
            f.write(conllu_block(s))
    dump_jsonl(HERE / "lending.gold.jsonl",
               [dict(document_id=s["document_id"],
                     sentence_id=s["sentence_id"], **g)
                for s in lending for g in align(s)[2]])

    rows = []
    for sentence, question, answer, score, *anchor in READER_ROWS:
        start = sentence["text"].index(anchor[0] if anchor else answer)
        rows.append(dict(question=question, context=sentence["text"],
                         answer=answer, score=score, start=start,
                         end=start + len(answer)))
    dump_jsonl(HERE / "walkthrough_reader.jsonl", rows)


if __name__ == "__main__":
    main()
