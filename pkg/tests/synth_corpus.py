"""Deterministic stand-in corpus for the full-scale acceptance runs.

The public 1,562-sentence corpus the big-run checks were written against is
not bundled here, so this module synthesizes a corpus of the same size:
seeded random draws over eleven sentence schemata, each producing a matched
(AMR graph, CoNLL-U block) pair. Point LITTLE_PRINCE_AMR and
LITTLE_PRINCE_CONLLU at real files to run the same checks on the genuine
corpus instead.
"""

import random

NAMES = ["Mary", "John", "Alice", "Robert", "Nadia", "Omar", "Lena",
         "Tesla", "Iris", "Viktor"]
NOUNS = ["engine", "museum", "bridge", "letter", "garden", "rocket",
         "piano", "castle", "valley", "mirror", "statue", "harbor"]
FOODS = ["bread", "soup", "rice", "cake"]
ADJS = ["red", "old", "tiny", "golden", "quiet", "strange"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July",
          "August", "September", "October", "November", "December"]
UNITS = ["year", "month", "week", "day", "hour"]

PASSIVE_VERBS = [("break-01", "break", "broken"),
                 ("open-01", "open", "opened"),
                 ("build-01", "build", "built"),
                 ("write-01", "write", "written"),
                 ("repair-01", "repair", "repaired"),
                 ("paint-01", "paint", "painted")]
PRESENT_VERBS = [("visit-01", "visit", "visits"),
                 ("love-01", "love", "loves"),
                 ("see-01", "see", "sees"),
                 ("want-01", "want", "wants"),
                 ("buy-01", "buy", "buys")]
PAST_VERBS = [("stand-01", "stand", "stood"),
              ("sleep-01", "sleep", "slept"),
              ("work-01", "work", "worked"),
              ("dance-01", "dance", "danced"),
              ("wait-01", "wait", "waited")]
INTRANS_VERBS = [("laugh-01", "laugh", "laughed"),
                 ("arrive-01", "arrive", "arrived"),
                 ("vanish-01", "vanish", "vanished")]
BASE_VERBS = [("visit-01", "visit"), ("buy-01", "buy"), ("sell-01", "sell"),
              ("open-01", "open"), ("build-01", "build")]


def _rows(*specs):
    lines = []
    for i, (surface, lemma, upos, xpos, feats, head, deprel) in enumerate(
            specs, start=1):
        lines.append(f"{i}\t{surface}\t{lemma}\t{upos}\t{xpos}\t{feats}"
                     f"\t{head}\t{deprel}\t_\t_")
    return "\n".join(lines)


def _name_node(var, name):
    return f'({var} / person :name (nm / name :op1 "{name}"))'


def _passive(rng):
    frame, lemma, part = rng.choice(PASSIVE_VERBS)
    noun = rng.choice(NOUNS)
    sent = f"The {noun} was {part} ."
    graph = f"(v / {frame} :ARG1 (n / {noun}))"
    rows = _rows(
        ("The", "the", "DET", "DT", "_", 2, "det"),
        (noun, noun, "NOUN", "NN", "_", 4, "nsubj:pass"),
        ("was", "be", "AUX", "VBD", "Tense=Past", 4, "aux:pass"),
        (part, lemma, "VERB", "VBN", "Tense=Past|VerbForm=Part", 0, "root"),
        (".", ".", "PUNCT", ".", "_", 4, "punct"))
    return graph, sent, rows


def _active_present(rng):
    frame, lemma, v3 = rng.choice(PRESENT_VERBS)
    name, noun = rng.choice(NAMES), rng.choice(NOUNS)
    sent = f"{name} {v3} the {noun} ."
    graph = (f"(v / {frame} :ARG0 {_name_node('p', name)} "
             f":ARG1 (o / {noun}))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        (v3, lemma, "VERB", "VBZ", "Tense=Pres", 0, "root"),
        ("the", "the", "DET", "DT", "_", 4, "det"),
        (noun, noun, "NOUN", "NN", "_", 2, "obj"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


def _location_past(rng):
    frame, lemma, past = rng.choice(PAST_VERBS)
    name, noun = rng.choice(NAMES), rng.choice(NOUNS)
    sent = f"{name} {past} in the {noun} ."
    graph = (f"(v / {frame} :ARG0 {_name_node('p', name)} "
             f":location (l / {noun}))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        (past, lemma, "VERB", "VBD", "Tense=Past", 0, "root"),
        ("in", "in", "ADP", "IN", "_", 5, "case"),
        ("the", "the", "DET", "DT", "_", 5, "det"),
        (noun, noun, "NOUN", "NN", "_", 2, "obl"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


def _duration(rng):
    name, unit = rng.choice(NAMES), rng.choice(UNITS)
    sent = f"{name} slept for 1 {unit} ."
    graph = (f"(s / sleep-01 :ARG0 {_name_node('p', name)} :duration "
             f"(t / temporal-quantity :quant 1 :unit (u / {unit})))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        ("slept", "sleep", "VERB", "VBD", "Tense=Past", 0, "root"),
        ("for", "for", "ADP", "IN", "_", 5, "case"),
        ("1", "1", "NUM", "CD", "_", 5, "nummod"),
        (unit, unit, "NOUN", "NN", "_", 2, "obl"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


def _dated_event(rng):
    noun = rng.choice(NOUNS)
    month = rng.randrange(1, 13)
    year = rng.randrange(1950, 2024)
    sent = f"The {noun} opened in {MONTHS[month - 1]} {year} ."
    graph = (f"(o / open-01 :ARG1 (n / {noun}) "
             f":time (d / date-entity :month {month} :year {year}))")
    rows = _rows(
        ("The", "the", "DET", "DT", "_", 2, "det"),
        (noun, noun, "NOUN", "NN", "_", 3, "nsubj"),
        ("opened", "open", "VERB", "VBD", "Tense=Past", 0, "root"),
        ("in", "in", "ADP", "IN", "_", 5, "case"),
        (MONTHS[month - 1], MONTHS[month - 1], "PROPN", "NNP", "_", 3, "obl"),
        (str(year), str(year), "NUM", "CD", "_", 5, "nummod"),
        (".", ".", "PUNCT", ".", "_", 3, "punct"))
    return graph, sent, rows


def _future(rng):
    frame, lemma = rng.choice(BASE_VERBS)
    name, noun = rng.choice(NAMES), rng.choice(NOUNS)
    sent = f"{name} will {lemma} the {noun} ."
    graph = (f"(v / {frame} :ARG0 {_name_node('p', name)} "
             f":ARG1 (o / {noun}))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 3, "nsubj"),
        ("will", "will", "AUX", "MD", "_", 3, "aux"),
        (lemma, lemma, "VERB", "VB", "VerbForm=Inf", 0, "root"),
        ("the", "the", "DET", "DT", "_", 5, "det"),
        (noun, noun, "NOUN", "NN", "_", 3, "obj"),
        (".", ".", "PUNCT", ".", "_", 3, "punct"))
    return graph, sent, rows


def _control_reentrant(rng):
    name = rng.choice(NAMES)
    sent = f"{name} wants to go ."
    graph = (f"(w / want-01 :ARG0 {_name_node('p', name)} "
             f":ARG1 (g / go-02 :ARG0 p))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        ("wants", "want", "VERB", "VBZ", "Tense=Pres", 0, "root"),
        ("to", "to", "PART", "TO", "_", 4, "mark"),
        ("go", "go", "VERB", "VB", "VerbForm=Inf", 2, "xcomp"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


def _negated(rng):
    name, food = rng.choice(NAMES), rng.choice(FOODS)
    sent = f"{name} does not eat {food} ."
    graph = (f"(e / eat-01 :polarity - :ARG0 {_name_node('p', name)} "
             f":ARG1 (f / {food}))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 4, "nsubj"),
        ("does", "do", "AUX", "VBZ", "Tense=Pres", 4, "aux"),
        ("not", "not", "PART", "RB", "_", 4, "advmod"),
        ("eat", "eat", "VERB", "VB", "VerbForm=Inf", 0, "root"),
        (food, food, "NOUN", "NN", "_", 4, "obj"),
        (".", ".", "PUNCT", ".", "_", 4, "punct"))
    return graph, sent, rows


def _modified_subject(rng):
    frame, lemma, past = rng.choice(INTRANS_VERBS)
    adj, noun = rng.choice(ADJS), rng.choice(NOUNS)
    sent = f"The {adj} {noun} {past} ."
    graph = f"(v / {frame} :ARG0 (n / {noun} :mod (a / {adj})))"
    rows = _rows(
        ("The", "the", "DET", "DT", "_", 3, "det"),
        (adj, adj, "ADJ", "JJ", "_", 3, "amod"),
        (noun, noun, "NOUN", "NN", "_", 4, "nsubj"),
        (past, lemma, "VERB", "VBD", "Tense=Past", 0, "root"),
        (".", ".", "PUNCT", ".", "_", 4, "punct"))
    return graph, sent, rows


def _inverse_relative(rng):
    name, noun = rng.choice(NAMES), rng.choice(NOUNS)
    sent = f"{name} invented the {noun} ."
    graph = (f'(p / person :name (nm / name :op1 "{name}") '
             f":ARG0-of (i / invent-01 :ARG1 (c / {noun})))")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        ("invented", "invent", "VERB", "VBD", "Tense=Past", 0, "root"),
        ("the", "the", "DET", "DT", "_", 4, "det"),
        (noun, noun, "NOUN", "NN", "_", 2, "obj"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


def _frequency_constant(rng):
    name, noun = rng.choice(NAMES), rng.choice(NOUNS)
    sent = f"{name} visits the {noun} twice ."
    graph = (f"(v / visit-01 :ARG0 {_name_node('p', name)} "
             f":ARG1 (m / {noun}) :frequency 2)")
    rows = _rows(
        (name, name, "PROPN", "NNP", "_", 2, "nsubj"),
        ("visits", "visit", "VERB", "VBZ", "Tense=Pres", 0, "root"),
        ("the", "the", "DET", "DT", "_", 4, "det"),
        (noun, noun, "NOUN", "NN", "_", 2, "obj"),
        ("twice", "twice", "ADV", "RB", "_", 2, "advmod"),
        (".", ".", "PUNCT", ".", "_", 2, "punct"))
    return graph, sent, rows


SCHEMATA = [_passive, _active_present, _location_past, _duration,
            _dated_event, _future, _control_reentrant, _negated,
            _modified_subject, _inverse_relative, _frequency_constant]


def generate(n: int = 1562, seed: int = 19430406) -> tuple[str, str]:
    """Matched (AMR corpus text, CoNLL-U text) with n sentence blocks."""
    rng = random.Random(seed)
    amr_blocks, conllu_blocks = [], []
    for i in range(1, n + 1):
        graph, sent, rows = rng.choice(SCHEMATA)(rng)
        sid = f"lp{i:04d}"
        amr_blocks.append(f"# ::id {sid}\n# ::snt {sent}\n{graph}")
        conllu_blocks.append(f"# sent_id = {sid}\n# text = {sent}\n{rows}")
    return ("\n\n".join(amr_blocks) + "\n",
            "\n\n".join(conllu_blocks) + "\n")
