#!/usr/bin/env python3
"""Generate the synthetic 12-month sample corpus shipped in data/sample_corpus.

Every item is built from a small verb table so answer keys are unambiguous.
Traps reuse a weekly item's frame with a changed context that selects a
different verb form, so the stale (source) answer is always wrong.

Usage: gen_sample_corpus.py OUT_DIR
"""

import json
import os
import sys

# base, past, past participle, -ing, third person singular
VERBS = [
    ("break", "broke", "broken", "breaking", "breaks"),
    ("write", "wrote", "written", "writing", "writes"),
    ("take", "took", "taken", "taking", "takes"),
    ("give", "gave", "given", "giving", "gives"),
    ("eat", "ate", "eaten", "eating", "eats"),
    ("see", "saw", "seen", "seeing", "sees"),
    ("speak", "spoke", "spoken", "speaking", "speaks"),
    ("choose", "chose", "chosen", "choosing", "chooses"),
    ("drive", "drove", "driven", "driving", "drives"),
    ("fall", "fell", "fallen", "falling", "falls"),
    ("forget", "forgot", "forgotten", "forgetting", "forgets"),
    ("ride", "rode", "ridden", "riding", "rides"),
    ("steal", "stole", "stolen", "stealing", "steals"),
    ("throw", "threw", "thrown", "throwing", "throws"),
    ("wear", "wore", "worn", "wearing", "wears"),
    ("begin", "began", "begun", "beginning", "begins"),
    ("drink", "drank", "drunk", "drinking", "drinks"),
    ("sing", "sang", "sung", "singing", "sings"),
    ("swim", "swam", "swum", "swimming", "swims"),
    ("grow", "grew", "grown", "growing", "grows"),
    ("know", "knew", "known", "knowing", "knows"),
    ("draw", "drew", "drawn", "drawing", "draws"),
    ("hide", "hid", "hidden", "hiding", "hides"),
    ("shake", "shook", "shaken", "shaking", "shakes"),
]
FORMS = {"base": 0, "past": 1, "pp": 2, "ing": 3, "s3": 4}

SUBJECTS = ["Tom", "Lucy", "the old man", "my cousin", "the new student",
            "our neighbour", "the coach", "Mary", "the pilot", "Jack",
            "the young artist", "her brother", "the guide", "Anna",
            "the farmer", "the twins' father", "Mr. Li", "the captain",
            "the shy girl", "the driver", "Kate", "the reporter",
            "the librarian", "David"]

# (topic, teaching content, weekly frame, weekly form, trap frame, trap form)
# {s} is the subject, {v} the verb in base form shown as a hint.
TOPICS = [
    ("Simple present tense", "Habits and general truths take the simple present; third person singular adds -s.",
     "Every morning {s} ___ ({v}) before school.", "s3",
     "Yesterday morning {s} ___ ({v}) before school.", "past"),
    ("Simple past tense", "Finished actions at a stated past time take the simple past.",
     "Last Sunday {s} ___ ({v}) in the park.", "past",
     "Look! {s} is ___ ({v}) in the park right now.", "ing"),
    ("Present continuous", "Actions in progress now take am/is/are + -ing.",
     "Listen! {s} is ___ ({v}) next door.", "ing",
     "Listen! {s} has just ___ ({v}) next door.", "pp"),
    ("Past continuous", "Actions in progress at a past moment take was/were + -ing.",
     "At eight last night {s} was ___ ({v}).", "ing",
     "By eight last night {s} had ___ ({v}).", "pp"),
    ("Present perfect", "Past actions with present relevance take have/has + past participle.",
     "{s} has already ___ ({v}) it.", "pp",
     "{s} already ___ ({v}) it two days ago.", "past"),
    ("Past perfect", "An action completed before another past action takes had + past participle.",
     "By the time we arrived, it had already been ___ ({v}) by {s}.", "pp",
     "When we arrived, it kept ___ ({v}) because of {s}.", "ing"),
    ("Simple future", "Will + base form expresses future intention or prediction.",
     "Tomorrow {s} will ___ ({v}) first.", "base",
     "Tomorrow {s} will have ___ ({v}) first.", "pp"),
    ("Future continuous", "Will be + -ing describes an action in progress at a future time.",
     "This time tomorrow {s} will be ___ ({v}).", "ing",
     "This time yesterday {s} ___ ({v}) quickly.", "past"),
    ("Future perfect", "Will have + past participle describes completion before a future time.",
     "By next June {s} will have ___ ({v}) it.", "pp",
     "Next June {s} will ___ ({v}) it.", "base"),
    ("Passive voice: present", "Am/is/are + past participle puts the receiver of the action first.",
     "The song is often ___ ({v}) by {s}.", "pp",
     "The song often ___ ({v}) {s} away.", "s3"),
    ("Passive voice: past", "Was/were + past participle reports a past action on the subject.",
     "The letter was ___ ({v}) by {s}.", "pp",
     "The letter was ___ ({v}) {s} when it was lost.", "ing"),
    ("Passive voice: perfect", "Has/have been + past participle combines perfect aspect with passive voice.",
     "The work has been ___ ({v}) by {s}.", "pp",
     "The work has been ___ ({v}) {s} all week.", "ing"),
    ("Modal verbs: can and could", "Can/could are followed by the base form.",
     "{s} can ___ ({v}) very well.", "base",
     "{s} can be ___ ({v}) very well.", "pp"),
    ("Modal verbs: must and have to", "Must/have to express obligation and take the base form.",
     "{s} must ___ ({v}) it today.", "base",
     "{s} must have ___ ({v}) it yesterday.", "pp"),
    ("Modal verbs: should and ought to", "Should/ought to give advice and take the base form.",
     "{s} should ___ ({v}) more carefully.", "base",
     "{s} should have ___ ({v}) more carefully.", "pp"),
    ("Infinitives", "Verbs like decide, hope and plan take to + base form.",
     "{s} decided to ___ ({v}) alone.", "base",
     "{s} is used to ___ ({v}) alone.", "ing"),
    ("Gerunds", "Verbs like enjoy, finish and mind take the -ing form.",
     "{s} enjoys ___ ({v}) on weekends.", "ing",
     "{s} has ___ ({v}) on weekends before.", "pp"),
    ("Participles as adjectives", "Past participles describe completed or passive states.",
     "The ___ ({v}) vase belonged to {s}.", "pp",
     "The vase kept ___ ({v}) near {s}.", "ing"),
    ("Attributive clauses: that and which", "Relative clauses keep their own tense inside the clause.",
     "The book which {s} ___ ({v}) last year won a prize.", "past",
     "The book which {s} is ___ ({v}) now will win a prize.", "ing"),
    ("Attributive clauses: who, whom and whose", "Who refers to people; the clause verb agrees with its own subject.",
     "The person who ___ ({v}) every day is {s}.", "s3",
     "The person who ___ ({v}) yesterday was {s}.", "past"),
    ("Attributive clauses: where and when", "Where/when introduce clauses of place and time.",
     "I still remember the day when {s} ___ ({v}) there.", "past",
     "I still remember the day when {s} was ___ ({v}) there.", "pp"),
    ("Noun clauses", "That/whether clauses act as subjects, objects or complements.",
     "Whether {s} will ___ ({v}) is unknown.", "base",
     "Whether {s} has ___ ({v}) is unknown.", "pp"),
    ("Adverbial clauses of time", "Whenever/while clauses set the time frame of the main clause.",
     "Whenever {s} ___ ({v}), everyone watches.", "s3",
     "While {s} was ___ ({v}), everyone watched.", "ing"),
    ("Adverbial clauses of condition", "In first conditionals the if-clause takes the simple present.",
     "If {s} ___ ({v}) tomorrow, we will know.", "s3",
     "If {s} had ___ ({v}) yesterday, we would have known.", "pp"),
    ("Comparatives", "Comparisons keep parallel verb forms on both sides.",
     "{s} ___ ({v}) faster than anyone else did last year.", "past",
     "{s} is ___ ({v}) faster than anyone else now.", "ing"),
    ("Superlatives", "Superlative clauses often use the present perfect with ever.",
     "It is the best thing {s} has ever ___ ({v}).", "pp",
     "It was the best thing {s} ___ ({v}) that day.", "past"),
    ("Articles", "A/an/the precede nouns; the verb after a singular subject agrees.",
     "A friend of {s} ___ ({v}) here every week.", "s3",
     "A friend of {s} ___ ({v}) here last week.", "past"),
    ("Prepositions of time", "On, in and at locate events in time.",
     "On Mondays {s} ___ ({v}) early.", "s3",
     "On Monday last week {s} ___ ({v}) early.", "past"),
    ("Prepositions of place", "In, on and at locate events in space.",
     "At the moment {s} is ___ ({v}) in the hall.", "ing",
     "In the hall {s} has ___ ({v}) many times.", "pp"),
    ("Conjunctions", "And, but and so join clauses with matching tense.",
     "{s} arrived late, so {s} ___ ({v}) quickly.", "past",
     "{s} arrives late, so {s} ___ ({v}) quickly.", "s3"),
    ("Subjunctive mood", "Wishes about the past take had + past participle.",
     "I wish {s} had ___ ({v}) it.", "pp",
     "I wish {s} would ___ ({v}) it.", "base"),
    ("Inversion", "Negative adverbials at the front trigger auxiliary inversion.",
     "Never has {s} ___ ({v}) so fast.", "pp",
     "Never does {s} ___ ({v}) so fast.", "base"),
    ("Emphatic sentences", "It is/was ... that ... highlights one element.",
     "It was {s} who ___ ({v}) first.", "past",
     "It is {s} who always ___ ({v}) first.", "s3"),
    ("Subject-verb agreement", "Singular subjects take singular verbs even with inserted phrases.",
     "{s}, together with friends, ___ ({v}) every day.", "s3",
     "{s}, together with friends, ___ ({v}) the other day.", "past"),
    ("Non-finite verbs", "Participle phrases show time and voice relative to the main verb.",
     "Having ___ ({v}) it, {s} left.", "pp",
     "Before ___ ({v}) it, {s} left.", "ing"),
    ("Ellipsis and substitution", "Auxiliaries stand in for repeated verb phrases.",
     "{s} has ___ ({v}) it, and so have I.", "pp",
     "{s} will ___ ({v}) it, and so will I.", "base"),
]

LABELS = ["A", "B", "C", "D"]
FORMATS = ["multiple_choice", "fill_in_blank", "error_correction", "fill_in_blank"]


def fill(frame, subject, verb):
    text = frame.replace("{s}", subject).replace("{v}", verb[0])
    return text[0].upper() + text[1:]


def options_for(verb, key_form, other_form):
    # Four verb forms including the key and the other (trap) form; order is fixed by
    # FORMS so the key label varies across items.
    picks = [key_form, other_form]
    for f in ["base", "past", "pp", "ing", "s3"]:
        if len(picks) == 4:
            break
        if f not in picks:
            picks.append(f)
    picks.sort(key=lambda f: FORMS[f])
    return [{"label": LABELS[i], "text": verb[FORMS[f]]} for i, f in enumerate(picks)]


def wrong_form(form):
    return {"base": "ing", "past": "pp", "pp": "past", "ing": "base", "s3": "base"}[form]


def make_item(qid, fmt, frame, form, other_form, subject, verb, category, month, week=None,
              trap_source=None):
    key_text = verb[FORMS[form]]
    q = {"id": qid, "format": fmt, "category": category, "month": month}
    if week is not None:
        q["week"] = week
    if fmt == "multiple_choice":
        opts = options_for(verb, form, other_form)
        q["stem"] = fill(frame, subject, verb)
        q["options"] = opts
        q["answer_key"] = next(o["label"] for o in opts if o["text"] == key_text)
    elif fmt == "fill_in_blank":
        q["stem"] = fill(frame, subject, verb)
        q["answer_key"] = key_text
    else:
        bad = verb[FORMS[wrong_form(form)]]
        sentence = fill(frame, subject, verb).replace("___", bad).replace(" (" + verb[0] + ")", "")
        q["stem"] = "Correct the underlined verb: " + sentence.replace(bad, "_" + bad + "_", 1)
        q["answer_key"] = key_text
    if trap_source is not None:
        q["trap_source_id"] = trap_source
    return q


def main(out_dir):
    months_dir = os.path.join(out_dir, "months")
    os.makedirs(months_dir, exist_ok=True)
    for month in range(1, 13):
        kps, questions, traps = [], [], []
        for week in range(1, 4):
            t = (month - 1) * 3 + (week - 1)
            topic, content, frame, form, trap_frame, trap_form = TOPICS[t]
            kps.append({"month": month, "week": week, "topic": topic, "teaching_content": content})
            for i in range(20):
                verb = VERBS[(i + t) % len(VERBS)]
                subject = SUBJECTS[(i * 5 + t) % len(SUBJECTS)]
                fmt = FORMATS[(i + t) % len(FORMATS)]
                qid = "m%02dw%dq%02d" % (month, week, i + 1)
                questions.append(make_item(qid, fmt, frame, form, trap_form, subject, verb,
                                           "weekly", month, week))
                # Seven traps per week (21 per month): mirror items 1, 4, 7, ...
                if i % 3 == 0:
                    tid = "m%02dt%d%02d" % (month, week, i // 3 + 1)
                    traps.append(make_item(tid, fmt, trap_frame, trap_form, form, subject, verb,
                                           "trap", month, week, trap_source=qid))
        doc = {"month": month, "knowledge_points": kps, "questions": questions + traps}
        with open(os.path.join(months_dir, "%02d.json" % month), "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, ensure_ascii=False)
            fh.write("\n")

    anchor = []
    for i in range(100):
        t = (i * 13) % len(TOPICS)
        topic, content, frame, form, trap_frame, trap_form = TOPICS[t]
        verb = VERBS[(i * 7 + 3) % len(VERBS)]
        subject = SUBJECTS[(i * 11 + 2) % len(SUBJECTS)]
        fmt = FORMATS[i % len(FORMATS)]
        month = t // 3 + 1
        item = make_item("a%03d" % (i + 1), fmt, "In the review, " + frame[0].lower() + frame[1:],
                         form, trap_form, subject, verb, "anchor", month)
        anchor.append(item)
    with open(os.path.join(out_dir, "anchor.json"), "w", encoding="utf-8") as fh:
        json.dump({"items": anchor}, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(sys.argv[1])
