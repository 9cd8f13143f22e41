"""Generate the shipped German sample corpus and its annotation.

A small template grammar with explicit declension tables writes

  german_sample.txt      tokenized sentences, ordinary casing
  german_sample.ann      the same sentences, truecased, one token per line as
                         surface<TAB>lemma<TAB>tag
  german_annotated_200.ann   the first 200 annotated sentences

Tags and lemmas follow the SMOR/STTS conventions (<+NN><Fem><Acc><Pl><NA>,
Raub<NN>Fisch, [APPR-Dat]). Each (lemma, tag) pair determines its surface
form, so the annotation is closed under re-inflection.

    python tools/make_german_sample.py src/morphoseg/fixtures/data
"""

import argparse
import random
from pathlib import Path

SEED = 20170901
N_SENTENCES = 1000

CASES = ("Nom", "Acc", "Dat", "Gen")

# lemma, gender, genitive singular ending, plural ("" = no plural), weak ending
NOUNS = [
    ("Fisch", "Masc", "es", "Fische", ""),
    ("Wert", "Masc", "es", "Werte", ""),
    ("Markt", "Masc", "es", "Märkte", ""),
    ("Vertrag", "Masc", "es", "Verträge", ""),
    ("Bericht", "Masc", "es", "Berichte", ""),
    ("Preis", "Masc", "es", "Preise", ""),
    ("Tag", "Masc", "es", "Tage", ""),
    ("Weg", "Masc", "es", "Wege", ""),
    ("Hof", "Masc", "es", "Höfe", ""),
    ("Brief", "Masc", "es", "Briefe", ""),
    ("Plan", "Masc", "es", "Pläne", ""),
    ("Wirt", "Masc", "es", "Wirte", ""),
    ("Betrieb", "Masc", "es", "Betriebe", ""),
    ("Garten", "Masc", "s", "Gärten", ""),
    ("Wechsel", "Masc", "s", "Wechsel", ""),
    ("Handel", "Masc", "s", "", ""),
    ("Schutz", "Masc", "es", "", ""),
    ("Verkehr", "Masc", "s", "", ""),
    ("Staat", "Masc", "es", "Staaten", ""),
    ("Kunde", "Masc", "", "Kunden", "n"),
    ("Bauer", "Masc", "", "Bauern", "n"),
    ("Patient", "Masc", "", "Patienten", "en"),
    ("Grenze", "Fem", "", "Grenzen", ""),
    ("Stadt", "Fem", "", "Städte", ""),
    ("Schule", "Fem", "", "Schulen", ""),
    ("Kommission", "Fem", "", "Kommissionen", ""),
    ("Regel", "Fem", "", "Regeln", ""),
    ("Arbeit", "Fem", "", "Arbeiten", ""),
    ("Politik", "Fem", "", "", ""),
    ("Umwelt", "Fem", "", "", ""),
    ("Energie", "Fem", "", "Energien", ""),
    ("Zeit", "Fem", "", "Zeiten", ""),
    ("Straße", "Fem", "", "Straßen", ""),
    ("Bank", "Fem", "", "Banken", ""),
    ("Regierung", "Fem", "", "Regierungen", ""),
    ("Forderung", "Fem", "", "Forderungen", ""),
    ("Wirtschaft", "Fem", "", "", ""),
    ("Kraft", "Fem", "", "Kräfte", ""),
    ("Sonne", "Fem", "", "Sonnen", ""),
    ("Frage", "Fem", "", "Fragen", ""),
    ("Lösung", "Fem", "", "Lösungen", ""),
    ("Steuer", "Fem", "", "Steuern", ""),
    ("Ware", "Fem", "", "Waren", ""),
    ("Jahr", "Neut", "es", "Jahre", ""),
    ("Land", "Neut", "es", "Länder", ""),
    ("Haus", "Neut", "es", "Häuser", ""),
    ("Kind", "Neut", "es", "Kinder", ""),
    ("Geld", "Neut", "es", "Gelder", ""),
    ("Werk", "Neut", "es", "Werke", ""),
    ("Wasser", "Neut", "s", "", ""),
    ("Gesetz", "Neut", "es", "Gesetze", ""),
    ("Quecksilber", "Neut", "s", "", ""),
    ("Problem", "Neut", "s", "Probleme", ""),
    ("Unternehmen", "Neut", "s", "Unternehmen", ""),
    ("Ziel", "Neut", "es", "Ziele", ""),
    ("Buch", "Neut", "es", "Bücher", ""),
    ("Produkt", "Neut", "es", "Produkte", ""),
    ("Gebiet", "Neut", "es", "Gebiete", ""),
    ("Projekt", "Neut", "es", "Projekte", ""),
    ("Recht", "Neut", "es", "Rechte", ""),
]

# modifier surfaces with filler, modifier lemmas, head noun
COMPOUNDS = [
    (("Raub",), ("Raub",), "Fisch"),
    (("Grenz",), ("Grenze",), "Wert"),
    (("Jahres",), ("Jahr",), "Wechsel"),
    (("Jahres",), ("Jahr",), "Bericht"),
    (("Land",), ("Land",), "Wirt"),
    (("Wasser",), ("Wasser",), "Preis"),
    (("Energie",), ("Energie",), "Preis"),
    (("Energie",), ("Energie",), "Markt"),
    (("Energie",), ("Energie",), "Politik"),
    (("Umwelt",), ("Umwelt",), "Schutz"),
    (("Umwelt",), ("Umwelt",), "Politik"),
    (("Umwelt", "schutz"), ("Umwelt", "Schutz"), "Gesetz"),
    (("Stadt",), ("Stadt",), "Garten"),
    (("Kinder",), ("Kind",), "Garten"),
    (("Schul",), ("Schule",), "Buch"),
    (("Haus",), ("Haus",), "Bank"),
    (("Arbeits",), ("Arbeit",), "Zeit"),
    (("Arbeits",), ("Arbeit",), "Markt"),
    (("Steuer",), ("Steuer",), "Recht"),
    (("Wirtschafts",), ("Wirtschaft",), "Politik"),
    (("Verkehrs",), ("Verkehr",), "Politik"),
    (("Wasser",), ("Wasser",), "Werk"),
    (("Kraft",), ("Kraft",), "Werk"),
    (("Sonnen",), ("Sonne",), "Energie"),
    (("Geld",), ("Geld",), "Politik"),
    (("Bank",), ("Bank",), "Kunde"),
    (("Handels",), ("Handel",), "Vertrag"),
    (("Staats",), ("Staat",), "Vertrag"),
    (("Quecksilber",), ("Quecksilber",), "Wert"),
    (("Schutz",), ("Schutz",), "Ziel"),
    (("Markt",), ("Markt",), "Preis"),
    (("Preis",), ("Preis",), "Regel"),
    (("Land",), ("Land",), "Straße"),
]

# truncated first elements: EU-Kommission is lemmatized EU-<TRUNC>Kommission
HYPHENATED = [("EU", "Kommission"), ("EU", "Staat"), ("EU", "Gesetz"), ("EU", "Land"),
              ("CO2", "Wert")]

ADJECTIVES = ["groß", "klein", "neu", "alt", "wichtig", "schnell", "stark", "billig", "schön",
              "lang", "kurz", "frei", "rein", "europäisch", "wirtschaftlich", "öffentlich",
              "deutsch", "klar", "sicher", "günstig", "gemeinsam", "politisch", "sozial",
              "national", "regional"]

STRONG = {"Masc": ("er", "en", "em", "en"), "Fem": ("e", "e", "er", "er"),
          "Neut": ("es", "es", "em", "en"), "Pl": ("e", "e", "en", "er")}
WEAK = {"Masc": ("e", "en", "en", "en"), "Fem": ("e", "e", "en", "en"),
        "Neut": ("e", "e", "en", "en"), "Pl": ("en", "en", "en", "en")}
MIXED = {"Masc": ("er", "en", "en", "en"), "Fem": ("e", "e", "en", "en"),
         "Neut": ("es", "es", "en", "en")}

DEF = {"Masc": ("der", "den", "dem", "des"), "Fem": ("die", "die", "der", "der"),
       "Neut": ("das", "das", "dem", "des"), "Pl": ("die", "die", "den", "der")}
INDEF = {"Masc": ("ein", "einen", "einem", "eines"), "Fem": ("eine", "eine", "einer", "einer"),
         "Neut": ("ein", "ein", "einem", "eines")}

VERBS = ["kaufen", "verkaufen", "prüfen", "fordern", "senken", "erhöhen", "verdoppeln",
         "planen", "brauchen", "suchen", "finden", "melden", "zeigen", "nutzen", "liefern",
         "bezahlen", "kontrollieren", "unterstützen", "verbessern", "schützen", "bauen",
         "ändern", "sichern", "erwarten", "begrenzen", "regeln", "stärken", "fördern"]
MODALS = {"wollen": "will", "können": "kann", "müssen": "muss", "sollen": "soll"}

PREP_ACC = ["für", "gegen", "ohne", "durch"]
PREP_DAT = ["mit", "in", "aus", "bei", "nach", "von"]
ADVERBS = ["deshalb", "heute", "bald", "nun"]


def third_singular(verb):
    stem = verb[:-1] if verb.endswith(("eln", "ern")) else verb[:-2]
    return stem + ("et" if stem.endswith(("d", "t")) else "t")


def lower_first(s):
    return s[:1].lower() + s[1:]


class Noun:
    def __init__(self, lemma, surface, gender, gen, plural, weak):
        self.lemma, self.surface, self.gender = lemma, surface, gender
        self.gen, self.plural, self.weak = gen, plural, weak

    def form(self, case, number):
        i = CASES.index(case)
        if number == "Pl":
            if case == "Dat" and not self.plural.endswith(("n", "s")):
                return self.plural + "n"
            return self.plural
        if self.weak:
            return self.surface if case == "Nom" else self.surface + self.weak
        if self.gender != "Fem" and i == 3:
            return self.surface + self.gen
        return self.surface

    def tag(self, case, number):
        return f"<+NN><{self.gender}><{case}><{number}><NA>"


def build_nouns():
    simple = {n[0]: Noun(n[0], n[0], *n[1:]) for n in NOUNS}
    nouns = list(simple.values())
    for mods, mod_lemmas, head_name in COMPOUNDS:
        head = simple[head_name]
        surface = "".join(mods) + lower_first(head.surface)
        lemma = "<NN>".join(mod_lemmas) + "<NN>" + head.lemma
        plural = "".join(mods) + lower_first(head.plural) if head.plural else ""
        nouns.append(Noun(lemma, surface, head.gender, head.gen, plural, head.weak))
    for first, head_name in HYPHENATED:
        head = simple[head_name]
        plural = f"{first}-{head.plural}" if head.plural else ""
        nouns.append(Noun(f"{first}-<TRUNC>{head.lemma}", f"{first}-{head.surface}",
                          head.gender, head.gen, plural, head.weak))
    return nouns


class Grammar:
    def __init__(self, rng):
        self.rng = rng
        self.nouns = build_nouns()

    def noun_phrase(self, case, number=None, det=None):
        r = self.rng
        noun = r.choice(self.nouns)
        if number is None:
            number = "Pl" if noun.plural and r.random() < 0.4 else "Sg"
        if number == "Pl" and not noun.plural:
            number = "Sg"
        if det is None:
            if number == "Sg":
                det = "def" if r.random() < 0.6 else "indef"
            else:
                det = "def" if r.random() < 0.5 else "none"
        key = "Pl" if number == "Pl" else noun.gender
        gender = "NoGend" if number == "Pl" else noun.gender
        i = CASES.index(case)
        out = []
        if det == "def":
            out.append((DEF[key][i], "die<Def>", f"<+ART><{gender}><{case}><{number}><St>"))
            endings, strength = WEAK, "Wk"
        elif det == "indef":
            out.append((INDEF[key][i], "eine<Indef>", f"<+ART><{gender}><{case}><{number}><St>"))
            endings, strength = MIXED, None
        else:
            endings, strength = STRONG, "St"
        if r.random() < 0.45:
            adj = r.choice(ADJECTIVES)
            ending = endings[key][i]
            s = strength or ("St" if ending == STRONG[key][i] and ending in ("er", "es") else "Wk")
            out.append((adj + ending, f"{adj}<Pos>", f"<+ADJ><{gender}><{case}><{number}><{s}>"))
        out.append((noun.form(case, number), noun.lemma, noun.tag(case, number)))
        if r.random() < 0.12:
            out += self.noun_phrase("Gen", det="def")[0]
        return out, number

    def verb(self, number, modal=False):
        if modal:
            lemma = self.rng.choice(sorted(MODALS))
            surface = MODALS[lemma] if number == "Sg" else lemma
        else:
            lemma = self.rng.choice(VERBS)
            surface = third_singular(lemma) if number == "Sg" else lemma
        return [(surface, lemma, f"<+V><3><{number}><Pres><Ind>")]

    def infinitive(self):
        v = self.rng.choice(VERBS)
        return [(v, v, "<+V><Inf>")]

    def prep_phrase(self):
        r = self.rng
        if r.random() < 0.15:
            year = str(r.randrange(2005, 2021))
            return [("im", "in", "[APPRART-Dat]"), ("Jahr", "Jahr", "<+NN><Neut><Dat><Sg><NA>"),
                    (year, None, None)]
        if r.random() < 0.5:
            p, case, tag = r.choice(PREP_ACC), "Acc", "[APPR-Acc]"
        else:
            p, case, tag = r.choice(PREP_DAT), "Dat", "[APPR-Dat]"
        np, _ = self.noun_phrase(case)
        return [(p, p, tag)] + np

    def clause(self):
        r = self.rng
        kind = r.random()
        subj, number = self.noun_phrase("Nom")
        obj, _ = self.noun_phrase("Acc")
        pp = self.prep_phrase() if r.random() < 0.5 else []
        if kind < 0.4:
            return subj + self.verb(number) + obj + pp
        if kind < 0.7:
            return subj + self.verb(number, modal=True) + obj + pp + self.infinitive()
        if kind < 0.85:
            front = self.prep_phrase() if r.random() < 0.5 else [
                (a, a, "[ADV]") for a in [r.choice(ADVERBS)]]
            return front + self.verb(number) + subj + obj
        neg = [("nicht", "nicht", "[PTKNEG]")] if r.random() < 0.5 else [("auch", "auch", "[ADV]")]
        return subj + self.verb(number) + neg + obj + pp

    def sentence(self):
        tokens = self.clause()
        if self.rng.random() < 0.2:
            tokens += [(",", None, None), ("und", "und", "[KON]")] + self.clause()
        return tokens + [(".", None, None)]


def capitalize(tokens):
    first = tokens[0][0]
    return [first[:1].upper() + first[1:]] + [t[0] for t in tokens[1:]]


def write_annotations(path, sentences):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for sentence in sentences:
            for surface, lemma, tag in sentence:
                f.write(f"{surface}\t{lemma or '_'}\t{tag or '_'}\n")
            f.write("\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--seed", type=int, default=SEED)
    ap.add_argument("-n", type=int, default=N_SENTENCES)
    args = ap.parse_args()

    grammar = Grammar(random.Random(args.seed))
    sentences = [grammar.sentence() for _ in range(args.n)]
    args.outdir.mkdir(parents=True, exist_ok=True)
    with open(args.outdir / "german_sample.txt", "w", encoding="utf-8", newline="\n") as f:
        for s in sentences:
            f.write(" ".join(capitalize(s)) + "\n")
    write_annotations(args.outdir / "german_sample.ann", sentences)
    write_annotations(args.outdir / "german_annotated_200.ann", sentences[:200])


if __name__ == "__main__":
    main()
