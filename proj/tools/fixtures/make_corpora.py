#!/usr/bin/env python3
"""Regenerates the synthetic corpora under data/.

Output is deterministic for a given seed; the committed files were produced
with the defaults below.
"""

import argparse
import json
import pathlib
import random

CATEGORIES = {
    "canteen": {
        "topics": ["food", "lunch", "menu", "soup", "plov", "coffee", "tea",
                   "breakfast", "prices in the canteen", "vegetarian dishes",
                   "samsa", "portions", "cashier", "dining hall", "salad"],
        "wants": ["cheaper", "hotter", "fresher", "healthier", "tastier",
                  "bigger", "more varied"],
    },
    "library": {
        "topics": ["books", "textbooks", "reading room", "library hours",
                   "e-books", "journals", "book loans", "librarian",
                   "quiet zone", "printing", "scanner", "catalog", "shelves",
                   "study desks", "novels"],
        "wants": ["newer", "quieter", "open longer", "better organized",
                  "more available", "easier to borrow"],
    },
    "study": {
        "topics": ["lectures", "exams", "schedule", "teachers", "homework",
                   "grades", "courses", "syllabus", "lab sessions",
                   "midterms", "credits", "timetable", "seminars",
                   "assignments", "curriculum"],
        "wants": ["clearer", "fairer", "more practical", "better planned",
                  "less overloaded", "more interactive"],
    },
    "facilities": {
        "topics": ["wifi", "elevator", "heating", "toilets", "parking",
                   "air conditioning", "classrooms", "projectors", "chairs",
                   "lighting", "sockets", "lockers", "windows", "corridors",
                   "gym showers"],
        "wants": ["repaired", "cleaner", "warmer", "faster", "more reliable",
                  "replaced", "modernized"],
    },
    "events": {
        "topics": ["concerts", "sports day", "hackathon", "clubs",
                   "excursions", "festival", "debate club", "football",
                   "student council", "graduation party", "movie nights",
                   "volunteering", "chess tournament", "dance club",
                   "open day"],
        "wants": ["more frequent", "better advertised", "more fun",
                  "open to everyone", "better organized", "bigger"],
    },
}

TEMPLATES = [
    "please make the {t} {w}",
    "i suggest that the {t} should be {w}",
    "the {t} could be {w}",
    "can you make the {t} {w} please",
    "i wish the {t} were {w}",
    "we need the {t} to be {w}",
    "it would be great if the {t} became {w}",
    "my suggestion is about {t} , it should be {w}",
    "students want the {t} {w}",
    "why is the {t} not {w}",
]

NOISE = ["really", "also", "honestly", "in my opinion", "for all of us",
         "this semester", "at our university", "every day", "thank you",
         "asap"]


def sentence(rng, label, confuse_rate):
    cat = CATEGORIES[label]
    text = rng.choice(TEMPLATES).format(t=rng.choice(cat["topics"]),
                                        w=rng.choice(cat["wants"]))
    if rng.random() < 0.5:
        text += " " + rng.choice(NOISE)
    if rng.random() < confuse_rate:
        other = rng.choice([c for c in CATEGORIES if c != label])
        extra = CATEGORIES[other]
        text += rng.choice([" and the {t}", " like the {t}", " , the {t} too",
                            " , not only the {t}"]).format(
                                t=rng.choice(extra["topics"]))
    return text


def synthetic_corpus(rng, size, confuse_rate, label_noise):
    labels = sorted(CATEGORIES)
    seen = set()
    rows = []
    i = 0
    while len(rows) < size:
        label = labels[i % len(labels)]
        text = sentence(rng, label, confuse_rate)
        i += 1
        if text in seen:
            continue
        seen.add(text)
        # Annotation mistakes: a few suggestions carry a wrong label.
        if rng.random() < label_noise:
            label = rng.choice([c for c in labels if c != label])
        rows.append((text, label))
    rng.shuffle(rows)
    return [{"id": f"s{i:04d}", "text": t, "label": l}
            for i, (t, l) in enumerate(rows)]


LEXICON = {
    "canteen": [["food", "meals", "dishes"], ["cheaper", "affordable", "inexpensive"],
                ["coffee", "tea", "juice"], ["lunch", "dinner", "breakfast"],
                ["tastier", "better", "nicer"]],
    "library": [["books", "textbooks", "novels"], ["quieter", "calmer", "silent"],
                ["newer", "updated", "fresher"], ["room", "hall", "space"],
                ["borrow", "loan", "take"]],
    "study": [["lectures", "classes", "lessons"], ["exams", "tests", "quizzes"],
              ["clearer", "simpler", "understandable"],
              ["teachers", "professors", "lecturers"], ["homework", "assignments", "tasks"]],
    "facilities": [["wifi", "internet", "network"], ["repaired", "fixed", "renovated"],
                   ["cleaner", "tidier", "neater"], ["classrooms", "auditoriums", "rooms"],
                   ["warmer", "heated", "cozier"]],
    "events": [["concerts", "shows", "performances"], ["clubs", "societies", "circles"],
               ["more", "extra", "additional"], ["fun", "exciting", "interesting"],
               ["festival", "fair", "celebration"]],
}

SEED_TEMPLATES = {
    "canteen": ["the food in the canteen should be cheaper",
                "please serve coffee at lunch",
                "make the lunch food tastier",
                "i want cheaper coffee in the morning"],
    "library": ["the library needs newer books",
                "please keep the reading room quieter",
                "let students borrow books for longer",
                "the room with books could be quieter"],
    "study": ["lectures should be clearer",
              "teachers give too much homework before exams",
              "please make exams clearer",
              "homework from teachers should match lectures"],
    "facilities": ["the wifi must be repaired",
                   "classrooms should be cleaner and warmer",
                   "please get the wifi in classrooms repaired",
                   "make the classrooms warmer in winter"],
    "events": ["we need more concerts",
               "the festival should be more fun",
               "please organize more clubs for students",
               "concerts and clubs make student life fun"],
}

SEED_SUFFIX = ["", " please", " this year", " for everyone", " soon",
               " thank you", " next semester", " if possible", " really",
               " at aiu"]


def seed_corpus():
    records = []
    labels = sorted(SEED_TEMPLATES)
    idx = 0
    for suffix in SEED_SUFFIX:
        for label in labels:
            for base in SEED_TEMPLATES[label]:
                records.append({"id": f"v{idx:03d}", "text": base + suffix,
                                "label": label})
                idx += 1
    return records


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=pathlib.Path,
                    default=pathlib.Path(__file__).resolve().parents[2] / "data")
    ap.add_argument("--seed", type=int, default=2021)
    ap.add_argument("--confuse-rate", type=float, default=0.3)
    ap.add_argument("--label-noise", type=float, default=0.03)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    corpus = synthetic_corpus(rng, 1000, args.confuse_rate, args.label_noise)
    (args.out / "corpus_synthetic.json").write_text(
        json.dumps(corpus, indent=2, ensure_ascii=False) + "\n")
    seeds = seed_corpus()
    assert len(seeds) == 200
    (args.out / "corpus_seed200.json").write_text(
        json.dumps(seeds, indent=2, ensure_ascii=False) + "\n")
    (args.out / "lexicon.json").write_text(
        json.dumps(LEXICON, indent=2, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
