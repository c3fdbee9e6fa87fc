#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/.

The fixtures are synthetic. A small English-like language is defined by word
groups sitting on latent semantic axes (topics, sentiment, subjectivity,
synonym sets). Sentences are sampled from templates over those groups, and
every word gets a 50-d vector built from its groups plus word-specific noise.
Raw vector lengths grow with corpus frequency, so the unnormalized table
carries a frequency signal the way count-based embeddings do.

Everything is seeded; re-running reproduces the files byte for byte.

    python3 tools/make_fixtures.py [--out data]

The general-English moment file (data/corpus_stats.json) is produced
afterwards by the CLI from data/general_corpus.txt:

    cosal corpus-stats --vectors data/vectors.vec --text data/general_corpus.txt \
        -o data/corpus_stats.json
"""

import argparse
import collections
import math
import os

import numpy as np

DIM = 50
SEED = 20180318

# ---------------------------------------------------------------------------
# Vocabulary. Each group lists words most-frequent first and names the latent
# axes its prototype is built from.

GROUPS = {}


def group(name, words, axes, noise=0.55, own=0.6):
    GROUPS[name] = dict(words=words.split(), axes=axes, noise=noise, own=own)


group("func", "the a of and to in is it that this with for on as was but by at from "
      "its be are has have so there than too more just also all out up about into "
      "one some much even most which an or", {"function": 1.0}, noise=0.18, own=0.2)
group("common", "absorb poor after against appears around associated back before best between brighter "
      "built come comes deep depends down earlier face fast find fires goes hard heart help "
      "hopes left life lot make measured measures middle mix motion movement must narrow "
      "need needed next off often only opposite possible reached ready real reflect safer "
      "say see sees simple stands step stops such symbols takes test they times turn turns "
      "use used uses visible wheel while will plans", {"function": 0.45, "generic": 0.8},
      noise=0.5, own=0.3)
group("neg_particle", "not never no nothing", {"function": 0.7, "negation": 0.7}, noise=0.25)
group("wh", "what who where when why how which", {"function": 0.6, "question": 0.8}, noise=0.25)
group("qaux", "does did do is was are were can", {"function": 0.9, "question": 0.3}, noise=0.2)

# Cinema.
group("cin_film", "film movie picture flick", {"cinema": 1.0}, noise=0.3, own=0.9)
group("cin_noun", "story plot script scene screen cast character characters performance "
      "director actor actress sequel ending dialogue camera audience minutes hollywood "
      "studio premise narrative style exercise screenplay soundtrack editing pacing twist "
      "remake adaptation festival critics viewers mystification theatricality verisimilitude",
      {"cinema": 1.0})
group("cin_genre", "comedy drama thriller biopic romance horror documentary animation "
      "western musical satire fantasy", {"cinema": 0.8, "genre": 0.6})
group("cin_hero", "spiderman superhero villain hero batman monster", {"cinema": 0.7, "hero": 0.7})

# Evaluation. Sentiment is one signed axis shared by both polarities.
group("pos", "good great effective cute light charming brilliant moving funny believable "
      "glowing precise engaging delightful touching smart clever beautiful wonderful "
      "enjoyable fresh witty gripping powerful stunning warm heartfelt entertaining "
      "memorable compelling solid satisfying inventive lovely rocks cuter hilarious superb "
      "terrific", {"evaluative": 0.7, "sentiment": 0.7})
group("neg", "bad forgettable tepid dull bland vapid sour laughable boring tedious opaque "
      "flat awful predictable stale trifle farcical melodramatic mess pointless weak lame "
      "slow clumsy shallow sloppy silly contrived tiresome hollow bloated mediocre dreary "
      "lifeless unfunny derivative muddled", {"evaluative": 0.7, "sentiment": -0.7})
group("intens", "really quite rather truly extremely utterly thoroughly genuinely oddly "
      "surprisingly visually narratively emotionally occasionally sometimes unbelievably "
      "melodramatically ultimately almost", {"evaluative": 0.6, "degree": 0.8})
group("subj", "i we you my me our think feel believe love hate guess suppose wish seems "
      "probably honestly frankly perhaps maybe should would could", {"subjective": 1.0},
      noise=0.45)

# Plot description.
group("plot_verb", "travels finds returns discovers meets lives works leaves joins follows "
      "tries decides learns becomes loses wins moves begins searches escapes",
      {"narration": 1.0})
group("person", "man woman child person girl boy father mother son daughter family friend wife husband "
      "brother sister detective doctor teacher soldier officer agent king queen student",
      {"people": 1.0})
group("place_common", "town village city street road school house island ship war journey farm "
      "prison hospital army kingdom", {"place": 0.8, "narration": 0.4})
group("age", "young old former new local small", {"narration": 0.5, "descriptor": 0.7})
group("plot_goal", "home truth secret love revenge freedom fortune past murder killer "
      "treasure cure", {"narration": 0.7, "goal": 0.6})
group("name", "john mary anna peter david sarah michael laura james emma paul kate",
      {"people": 0.5, "name": 0.9})

# Technology / Stanford.
group("tech", "researchers research engineering laser lasers photons sensor sensors "
      "algorithm algorithms system technique imaging images cameras hidden objects object "
      "corner corners wall walls detect detection driverless autonomous car cars vehicle "
      "vehicles robot robots computer data software hardware lab professor graduate "
      "electrical scientists experiment prototype device pulse pulses reflected signal "
      "scan reconstruct reconstruction technology engineers processing resolution seconds "
      "measurement timing scattered photon systems", {"technology": 1.0})
group("stanford", "stanford university campus students mascot palo alto silicon valley "
      "alumni faculty", {"technology": 0.45, "stanford": 0.9})

# Colour / nature.
group("color", "green blue yellow orange purple violet brown color colors hue hues shade "
      "shades tint pigment pigments dye dyes paint painting painter canvas emerald olive "
      "jade lime", {"color": 1.0})
group("red_shade", "red crimson scarlet maroon ruby", {"color": 0.8, "redness": 0.7}, own=0.3)
group("nature", "leaf leaves grass plants plant tree forest trees cones daylight nature chlorophyll spring "
      "foliage sky sea vision eye eyes wavelength wavelengths spectrum symbol envy hope "
      "youth health environmental flag", {"color": 0.45, "nature": 0.9})
group("bird", "bird birds robin sparrow feathers", {"nature": 0.6, "bird": 0.8})

# Other topics for general text, documents and questions.
group("sport", "game ball team player players season coach league match score goal football "
      "basketball baseball soccer tennis championship victory fans stadium",
      {"sport": 1.0})
group("food", "food restaurant meal dinner chef kitchen recipe bread cheese wine coffee tea "
      "pizza soup sauce flavor taste dessert", {"food": 1.0})
group("politics", "government president election vote congress senate law policy minister "
      "party campaign officials authorities leaders", {"politics": 1.0})
group("music", "music song songs album band singer guitar concert", {"music": 1.0})
group("science", "physics chemistry biology scientist theory atom energy planet star stars "
      "earth moon gravity", {"science": 1.0})
group("geo", "river mountain ocean lake capital continent country state nation desert "
      "border region", {"place": 1.0, "geography": 0.6})
group("geo_name", "paris london tokyo rome egypt china france india brazil canada africa "
      "europe nile everest", {"place": 0.7, "name": 0.6})
group("numq", "many much long tall old year years century date population distance height "
      "percent number", {"quantity": 1.0})
group("number", "two three four five ten twenty hundred thousand million",
      {"quantity": 0.8, "numeral": 0.7})
group("abbr", "nasa fbi cia nato unesco ufo dna radar scuba", {"abbreviation": 1.0})
group("abbr_q", "stand abbreviation acronym full form", {"abbreviation": 0.6, "question": 0.5})
group("desc_q", "definition meaning mean cause causes explain reason work happen",
      {"question": 0.5, "description": 0.9})
group("hum_q", "invented wrote founded discovered painted composed first leader inventor "
      "author", {"people": 0.5, "creation": 0.8})
group("entity", "animal animals instrument sport language currency flower disease drink "
      "fruit metal", {"entity": 1.0})
group("loc_q", "located live lives largest situated", {"place": 0.6, "question": 0.4})

# Business / news for the paraphrase task. Synonym sets get their own axis.
group("org", "company firm bank airline retailer automaker", {"business": 1.0}, own=0.7)
group("syn_said", "said stated reported announced", {"speech": 1.0}, noise=0.25, own=0.8)
group("syn_rose", "rose climbed increased gained jumped", {"change": 0.8, "direction": 0.8},
      noise=0.25, own=0.4)
group("syn_fell", "fell dropped declined slipped dipped", {"change": 0.8, "direction": -0.8},
      noise=0.25, own=0.4)
group("syn_profit", "profit earnings income", {"business": 0.6, "finance": 0.8}, noise=0.25,
      own=0.9)
group("syn_sales", "sales revenue turnover", {"business": 0.6, "finance": 0.8}, noise=0.25,
      own=0.9)
group("syn_shares", "shares stock", {"business": 0.6, "market": 0.8}, noise=0.25, own=0.9)
group("syn_jobs", "jobs workers staff employees", {"business": 0.6, "labor": 0.8}, noise=0.25,
      own=0.9)
group("period", "quarter month week yesterday today", {"time": 1.0}, noise=0.35)
group("syn_buy", "buy acquire purchase", {"business": 0.5, "deal": 0.8}, noise=0.25, own=0.8)
group("syn_cut", "cut eliminate shed", {"business": 0.5, "reduction": 0.8}, noise=0.25, own=0.8)
group("syn_deal", "deal agreement merger", {"business": 0.5, "deal": 0.8}, noise=0.25, own=0.8)

# Words that belong to more than one group, with their mixing weights.
AMBIGUOUS = {
    "cardinal": {"red_shade": 0.55, "stanford": 0.45, "bird": 0.2},
    "light": {"pos": 0.5, "color": 0.4, "tech": 0.3},
    "rocks": {"pos": 0.6, "science": 0.3},
    "star": {"science": 0.6, "cin_noun": 0.4},
    "spring": {"nature": 0.7, "tech": 0.15},
}

# ---------------------------------------------------------------------------
# Templates. {group} draws a word from that group; bare words are literal.

TEMPLATES = {
    "mr": [
        "the {cin_film} is {intens} {S} and {S}",
        "{S} , {S} and {S}",
        "a {S} {cin_genre} with {S} {cin_noun}",
        "{intens} {S} but {intens} {S}",
        "{S} {cin_noun} , {S} {cin_noun}",
        "the {cin_noun} is {S} and the {cin_noun} is {S}",
        "it is a {S} {cin_genre} that is {intens} {S}",
        "{name} is {S} as the {person} in this {S} {cin_genre}",
        "as {cin_genre} goes , this one is {S}",
        "{intens} {S} {cin_film} about a {person} and a {S} {cin_noun}",
    ],
    "subj": [
        "i {subj} the {cin_film} is {intens} {E}",
        "{subj} , this is a {E} {cin_genre} and {subj} {E}",
        "you {subj} {subj} {E} about the {cin_noun}",
        "{E} , {E} and {intens} {E}",
        "the {cin_noun} {subj} {E} but i {subj} the {cin_noun}",
        "what a {E} {cin_film} , {subj} {intens} {E}",
    ],
    "obj": [
        "{name} , a {age} {person} , {plot_verb} to the {place_common} to find {plot_goal}",
        "a {person} {plot_verb} a {age} {person} in {geo_name}",
        "the {person} {plot_verb} the {plot_goal} of the {place_common}",
        "after the {place_common} , {name} {plot_verb} {plot_goal}",
        "{name} and {name} {plot_verb} a {plot_goal} in a {age} {place_common}",
        "the {cin_film} follows a {person} who {plot_verb} the {place_common}",
    ],
    "general": [
        "the {tech} of the {tech} is {intens} {E}",
        "{tech} at {stanford} {plot_verb} {tech} {tech}",
        "the {color} {nature} has a {color} {color}",
        "{red_shade} and {color} {nature} in {nature}",
        "the {sport} {sport} {plot_verb} the {sport} in {geo_name}",
        "a {E} {food} with {food} and {food}",
        "the {politics} {syn_said} the {politics} is {E}",
        "the {music} {music} is {intens} {E}",
        "{science} {science} in the {science} of {science}",
        "{org} {syn_said} {syn_profit} {syn_rose} in the {period}",
        "{name} {plot_verb} to {geo_name} with the {person}",
        "{subj} the {geo} in {geo_name} is {E}",
        "the {bird} has {red_shade} {bird}",
    ],
}

TREC = {
    "ABBR": [
        "what does {abbr} stand for",
        "what is the full form of {abbr}",
        "{abbr} is an abbreviation for what",
        "what is the acronym {abbr}",
    ],
    "DESC": [
        "why do {entity} {desc_q}",
        "what is the definition of {science}",
        "how does a {tech} work",
        "what is the meaning of {plot_goal}",
        "what causes {entity} to {desc_q}",
        "why is the {nature} {color}",
    ],
    "ENTY": [
        "what {entity} did {name} {hum_q}",
        "what is the best {entity} for {food}",
        "what {entity} is {color}",
        "what {entity} do {person} {plot_verb}",
        "which {entity} is used in {sport}",
    ],
    "HUM": [
        "who {hum_q} the {tech}",
        "who was the {hum_q} {person} in {geo_name}",
        "who {hum_q} the {music} {music}",
        "what {person} {hum_q} the {science}",
        "who is the {politics} of {geo_name}",
    ],
    "LOC": [
        "where is the {geo}",
        "what {geo} is {geo_name} in",
        "where is {geo_name} {loc_q}",
        "what {geo} has the {loc_q} {geo}",
        "where do {entity} {loc_q}",
    ],
    "NUM": [
        "how {numq} {entity} are in {geo_name}",
        "when was the {tech} {hum_q}",
        "what {numq} did {name} {hum_q} the {science}",
        "how {numq} is the {geo}",
        "what is the {numq} of {geo_name}",
    ],
}


ARTICLE_TOPICS = [
    ["tech", "stanford"], ["sport"], ["food"], ["politics"], ["music"],
    ["science"], ["org", "syn_profit", "syn_shares"], ["geo", "geo_name"],
    ["cin_noun", "cin_genre"], ["color", "nature"],
]

ARTICLE_FRAMES = [
    "the {T} of the {T} is {intens} {E}",
    "{name} {syn_said} the {T} {plot_verb} the {T}",
    "in the {period} the {T} and the {T} were {E}",
    "a {age} {T} {plot_verb} the {T} in {geo_name}",
    "the {T} has a {T} and a {T}",
    "{T} and {T} are {E} , {syn_said} the {person}",
    "it is the {T} that {plot_verb} the {T}",
    "there was a {E} {T} at the {T} this {period}",
]


class Language:
    def __init__(self, rng):
        self.rng = rng
        self.members = collections.defaultdict(list)  # group -> words
        for g, spec in GROUPS.items():
            for w in spec["words"]:
                if w not in AMBIGUOUS:
                    self.members[g].append(w)
        for w, mix in AMBIGUOUS.items():
            for g in mix:
                self.members[g].append(w)
        self.vocab = sorted({w for ws in self.members.values() for w in ws})

    def draw(self, group_name):
        words = self.members[group_name]
        ranks = np.arange(1, len(words) + 1, dtype=float)
        weights = 1.0 / ranks ** 0.9
        return words[self.rng.choice(len(words), p=weights / weights.sum())]

    def fill(self, template, slot_groups=None):
        out = []
        for piece in template.split():
            if piece.startswith("{") and piece.endswith("}"):
                name = piece[1:-1]
                if slot_groups and name in slot_groups:
                    name = slot_groups[name]()
                out.append(self.draw(name))
            else:
                out.append(piece)
        return " ".join(out)


def polarity_drawer(rng, label):
    def draw():
        u = rng.random()
        if u < 0.72:
            return "pos" if label == 1 else "neg"
        if u < 0.87:
            return "neg" if label == 1 else "pos"
        return "intens"
    return draw


def either_polarity(rng):
    return lambda: "pos" if rng.random() < 0.5 else "neg"


def movie_review(lang, rng, label):
    t = TEMPLATES["mr"][rng.integers(len(TEMPLATES["mr"]))]
    return lang.fill(t, {"S": polarity_drawer(rng, label)})


def subjectivity(lang, rng, label):
    if label == 1:
        t = TEMPLATES["subj"][rng.integers(len(TEMPLATES["subj"]))]
        s = lang.fill(t, {"E": either_polarity(rng)})
    else:
        t = TEMPLATES["obj"][rng.integers(len(TEMPLATES["obj"]))]
        s = lang.fill(t)
        # Some plot summaries slip in an evaluative word.
        if rng.random() < 0.2:
            s += " , " + lang.draw("pos" if rng.random() < 0.5 else "neg")
    return s


def question(lang, rng, cls):
    pool = TREC[cls]
    return lang.fill(pool[rng.integers(len(pool))]) + " ?"


def general_sentence(lang, rng):
    kind = rng.random()
    if kind < 0.2:
        return movie_review(lang, rng, int(rng.integers(2)))
    if kind < 0.35:
        return subjectivity(lang, rng, int(rng.integers(2)))
    if kind < 0.45:
        return question(lang, rng, list(TREC)[rng.integers(len(TREC))])
    t = TEMPLATES["general"][rng.integers(len(TEMPLATES["general"]))]
    return lang.fill(t, {"E": either_polarity(rng)})


# Paraphrase pairs: a news frame rendered twice. Paraphrases keep every slot
# and resample synonyms; non-paraphrases change one key slot.
def news_frame(lang, rng):
    kind = int(rng.integers(3))
    if kind == 0:
        return dict(kind=0, org=lang.draw("org"), metric=["syn_profit", "syn_sales", "syn_shares"][rng.integers(3)],
                    direction=["syn_rose", "syn_fell"][rng.integers(2)], amount=lang.draw("number"),
                    period=lang.draw("period"))
    if kind == 1:
        return dict(kind=1, org=lang.draw("org"), other=lang.draw("org"),
                    action=["syn_buy", "syn_deal"][rng.integers(2)], period=lang.draw("period"))
    return dict(kind=2, org=lang.draw("org"), amount=lang.draw("number"),
                action=["syn_cut", "syn_buy"][rng.integers(2)], period=lang.draw("period"))


def render_frame(lang, rng, f):
    said = lang.draw("syn_said")
    if f["kind"] == 0:
        forms = [
            f"the {f['org']} {said} its {lang.draw(f['metric'])} {lang.draw(f['direction'])} {f['amount']} percent this {f['period']}",
            f"{lang.draw(f['metric'])} at the {f['org']} {lang.draw(f['direction'])} {f['amount']} percent in the {f['period']} , officials {said}",
            f"in the {f['period']} the {f['org']} {lang.draw(f['metric'])} {lang.draw(f['direction'])} by {f['amount']} percent",
        ]
    elif f["kind"] == 1:
        verb = lang.draw(f["action"])
        forms = [
            f"the {f['org']} {said} it will {verb} the {f['other']} this {f['period']}",
            f"this {f['period']} the {f['org']} {said} a {verb} with the {f['other']}",
            f"the {f['other']} and the {f['org']} {said} they reached a {verb} in the {f['period']}",
        ]
    else:
        verb = lang.draw(f["action"])
        jobs = lang.draw("syn_jobs")
        forms = [
            f"the {f['org']} {said} it will {verb} {f['amount']} thousand {jobs} this {f['period']}",
            f"{f['amount']} thousand {jobs} at the {f['org']} face a {verb} , the {f['org']} {said} this {f['period']}",
            f"this {f['period']} the {f['org']} {said} plans to {verb} {f['amount']} thousand {jobs}",
        ]
    return forms[rng.integers(len(forms))]


def perturb_frame(lang, rng, f):
    g = dict(f)
    keys = {0: ["org", "metric", "direction", "amount"], 1: ["org", "other", "action"],
            2: ["org", "amount", "action"]}[f["kind"]]
    key = keys[rng.integers(len(keys))]
    if key == "org" or key == "other":
        while g[key] == f[key]:
            g[key] = lang.draw("org")
    elif key == "amount":
        while g[key] == f[key]:
            g[key] = lang.draw("number")
    elif key == "metric":
        g[key] = [m for m in ["syn_profit", "syn_sales", "syn_shares"] if m != f[key]][rng.integers(2)]
    elif key == "direction":
        g[key] = "syn_fell" if f[key] == "syn_rose" else "syn_rose"
    else:
        options = {1: ["syn_buy", "syn_deal"], 2: ["syn_cut", "syn_buy"]}[f["kind"]]
        g[key] = [a for a in options if a != f[key]][0]
    return g


# ---------------------------------------------------------------------------
# Hand-written excerpts (original text, vocabulary restricted to the language).

STANFORD_CONTEXT = """\
stanford researchers built a laser system that can detect hidden objects around a corner .
the technique fires a laser pulse at a wall and times the photons that come back .
a sensor measures the scattered light and an algorithm is used to reconstruct the hidden object .
the university lab hopes driverless cars will use the system to detect a child or a ball .
graduate students and a professor in electrical engineering built the prototype .
the device can scan a corner in seconds and the reconstruction has good resolution .
autonomous vehicles need sensors that can detect objects the cameras can not see .
the research team at stanford said the algorithm is fast and the data processing is precise .
the cardinal mascot and the campus tree are symbols of the university .
students on the stanford campus in palo alto work with engineers from silicon valley .
the lab plans an experiment with cars on a real road next year .
the laser timing and the photon measurement make the imaging system work .
faculty and alumni of the university say the technology could help robots and vehicles .
the professor said the system must also work in daylight and with moving objects .
the scientists reflected pulses off the wall to reconstruct the hidden corner .
the engineers built the hardware and the software for the imaging technique .
driverless vehicles with this technology could see around a corner of the street .
the stanford team said the research is a first step for the technology .
researchers in the lab used computer data to reconstruct the objects .
the algorithm and the sensors are the heart of the system .
"""

GREEN_CONTEXT = """\
green is the color most often associated with nature , life , health , youth , spring and hope .
green is also the color of envy and sometimes of poor health .
the green color of leaves and grass comes from the pigment chlorophyll .
plants and trees absorb red and blue light and reflect green light .
in painting , a painter can mix yellow and blue pigments to make green paint .
emerald , olive , jade and lime are shades of green .
red and green are opposite hues on the color wheel .
the eye sees green at the middle of the visible spectrum .
cardinal and crimson are deep shades of red , and scarlet is a brighter red .
the wavelength of green light is between blue and yellow .
green is the symbol of the environmental movement and appears on many a flag .
in spring the forest foliage turns a fresh green .
a red bird such as the cardinal stands out against green leaves .
dyes and pigments for green were hard to make for a painter .
the sea and the sky can have a green or blue tint .
the painter used a green shade on the canvas next to a red one .
many colors in nature are green , brown and yellow .
vision scientists say the eye has cones for red , green and blue light .
a ruby is red while an emerald is green .
the hue of a leaf depends on the plant and the season .
"""

HIDDEN_OBJECTS_ARTICLE = """\
a driverless car is moving down a narrow street and is about to turn a corner where a child has left a ball .
no person in the car can see the ball , but the car stops .
a laser system built by stanford researchers could make this possible .
the system fires a laser pulse at a wall and the light scattered back is measured by a sensor .
an algorithm uses the timing of the photons to reconstruct the hidden objects around the corner .

the research team said the technique is fast and the reconstruction takes only seconds .
earlier systems needed a long scan and a lot of data processing .
the new algorithm is precise and the hardware is simple .
a professor of electrical engineering said the technology could help autonomous vehicles and robots .
graduate students built the prototype in the university lab .

before the system is ready for the road it must also work in daylight .
it must also detect objects in motion , such as a moving ball or a child .
the team plans to test the device with cars on a real street .
the researchers said the imaging technique is a first step for driverless cars .
the stanford lab hopes the technology will make vehicles safer .
"""


def write_lines(path, lines):
    with open(path, "w") as f:
        for line in lines:
            f.write(line + "\n")


def tokens_of(text):
    out = []
    for raw in text.split():
        w = raw.strip(".,!?;:'\"()").lower()
        if w:
            out.append(w)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = ap.parse_args()
    out = os.path.abspath(args.out)
    os.makedirs(os.path.join(out, "tasks"), exist_ok=True)
    os.makedirs(os.path.join(out, "contexts"), exist_ok=True)

    rng = np.random.default_rng(SEED)
    lang = Language(rng)

    # --- corpora -----------------------------------------------------------
    general = [general_sentence(lang, rng) for _ in range(6000)]
    write_lines(os.path.join(out, "general_corpus.txt"), general)

    # 500 sentences in 20 articles of 25. Each article is about one topic and
    # keeps returning to a handful of its words, as news text does.
    docs = []
    for d in range(20):
        topic = ARTICLE_TOPICS[d % len(ARTICLE_TOPICS)]
        pool = [w for g in topic for w in lang.members[g]]
        chosen = list(rng.choice(pool, size=min(6, len(pool)), replace=False))
        weights = 1.0 / np.arange(1, len(chosen) + 1) ** 0.8
        weights /= weights.sum()

        def topic_word():
            return str(chosen[rng.choice(len(chosen), p=weights)])

        sents = []
        for _ in range(25):
            if rng.random() < 0.3:
                sents.append(general_sentence(lang, rng))
                continue
            frame = ARTICLE_FRAMES[rng.integers(len(ARTICLE_FRAMES))]
            words = []
            for piece in frame.split():
                if piece == "{T}":
                    words.append(topic_word())
                elif piece == "{E}":
                    words.append(lang.draw(either_polarity(rng)()))
                elif piece.startswith("{"):
                    words.append(lang.draw(piece[1:-1]))
                else:
                    words.append(piece)
            sents.append(" ".join(words))
        docs.append(sents)
    with open(os.path.join(out, "treebank_500.txt"), "w") as f:
        f.write("\n\n".join("\n".join(s) for s in docs) + "\n")

    # --- labelled tasks ----------------------------------------------------
    def write_task(name, rows):
        with open(os.path.join(out, "tasks", name), "w") as f:
            for row in rows:
                f.write("\t".join(row) + "\n")

    rows = []
    for i in range(400):
        label = i % 2
        rows.append((str(label), movie_review(lang, rng, label)))
    write_task("movie_review.tsv", rows)

    rows = []
    for i in range(400):
        label = i % 2
        rows.append(("subj" if label else "obj", subjectivity(lang, rng, label)))
    write_task("subjectivity.tsv", rows)

    rows = []
    classes = list(TREC)
    for i in range(420):
        cls = classes[i % len(classes)]
        rows.append((cls, question(lang, rng, cls)))
    write_task("question_type.tsv", rows)

    rows = []
    for i in range(400):
        frame = news_frame(lang, rng)
        first = render_frame(lang, rng, frame)
        if i % 2 == 0:
            second = render_frame(lang, rng, frame)
            label = "1"
        else:
            second = render_frame(lang, rng, perturb_frame(lang, rng, frame))
            label = "0"
        rows.append((label, first, second))
    write_task("paraphrase.tsv", rows)

    with open(os.path.join(out, "contexts", "stanford_tech.txt"), "w") as f:
        f.write(STANFORD_CONTEXT)
    with open(os.path.join(out, "contexts", "green_color.txt"), "w") as f:
        f.write(GREEN_CONTEXT)
    with open(os.path.join(out, "hidden_objects_article.txt"), "w") as f:
        f.write(HIDDEN_OBJECTS_ARTICLE)

    # --- vectors -----------------------------------------------------------
    all_text = list(general) + [s for d in docs for s in d]
    for name in ["movie_review.tsv", "subjectivity.tsv", "question_type.tsv", "paraphrase.tsv"]:
        with open(os.path.join(out, "tasks", name)) as f:
            for line in f:
                all_text.extend(line.rstrip("\n").split("\t")[1:])
    all_text += STANFORD_CONTEXT.splitlines() + GREEN_CONTEXT.splitlines() + HIDDEN_OBJECTS_ARTICLE.splitlines()
    counts = collections.Counter(w for s in all_text for w in tokens_of(s))

    vocab = sorted(set(lang.vocab) | set(counts))
    unknown = [w for w in vocab if w not in lang.vocab]
    if unknown:
        raise SystemExit("excerpt words missing from the language: " + " ".join(unknown))

    axes = {}

    def axis(name):
        if name not in axes:
            v = rng.standard_normal(DIM)
            axes[name] = v / np.linalg.norm(v)
        return axes[name]

    protos = {}
    for g, spec in GROUPS.items():
        p = sum(w * axis(a) for a, w in spec["axes"].items()) + spec["own"] * axis("group:" + g)
        protos[g] = p / np.linalg.norm(p)

    membership = collections.defaultdict(dict)
    for g, spec in GROUPS.items():
        for w in spec["words"]:
            membership[w][g] = 1.0
    for w, mix in AMBIGUOUS.items():
        membership[w] = dict(mix)

    log_counts = np.array([math.log(counts.get(w, 0) + 1.0) for w in vocab])
    z_freq = (log_counts - log_counts.mean()) / log_counts.std()

    vectors = {}
    for i, w in enumerate(vocab):
        mix = membership[w]
        total = sum(mix.values())
        latent = sum(m / total * protos[g] for g, m in mix.items())
        noise = sum(m / total * GROUPS[g]["noise"] for g, m in mix.items())
        latent = latent / np.linalg.norm(latent) + noise * rng.standard_normal(DIM) / math.sqrt(DIM)
        # Raw length tracks frequency, with a multiplicative jitter.
        length = math.exp(0.45 * z_freq[i] + 0.35 * rng.standard_normal())
        vectors[w] = length * latent / np.linalg.norm(latent)

    with open(os.path.join(out, "vectors.vec"), "w") as f:
        f.write(f"{len(vocab)} {DIM}\n")
        for w in vocab:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")

    # --- phrase space ------------------------------------------------------
    # Bigram vectors are synthesized as x_mix * v1 + (1 - x_mix) * v2 where
    # x_mix is a logistic of the first word's share of salience, measured
    # against the phrase context with the plain sample covariance.
    unit = {w: v / np.linalg.norm(v) for w, v in vectors.items()}
    phrase_context = general[:400]
    write_lines(os.path.join(out, "phrase_context.txt"), phrase_context)
    ctx = np.array([unit[w] for s in phrase_context for w in tokens_of(s)])
    mean = ctx.mean(axis=0)
    cov = np.cov(ctx, rowvar=False, ddof=1)
    cov += 1e-6 * np.trace(cov) / DIM * np.eye(DIM)
    precision = np.linalg.inv(cov)

    def salience(v):
        d = v - mean
        return math.sqrt(d @ precision @ d)

    content = [w for w in vocab if not any(g in ("func", "qaux", "wh", "neg_particle")
                                           for g in membership[w])]
    pairs = set()
    while len(pairs) < 400:
        a, b = rng.choice(len(content), size=2, replace=False)
        pairs.add((content[a], content[b]))
    with open(os.path.join(out, "phrases.vec"), "w") as f:
        rows = []
        for w in vocab:
            rows.append(w + " " + " ".join(f"{x:.6f}" for x in unit[w]))
        for a, b in sorted(pairs):
            sa, sb = salience(unit[a]), salience(unit[b])
            share = sa / (sa + sb)
            mix = 0.5 + 0.78 * (1.0 / (1.0 + math.exp(-(share - 0.5) / 0.11)) - 0.5)
            noise = 0.02 * rng.standard_normal(DIM) / math.sqrt(DIM)
            p = mix * unit[a] + (1.0 - mix) * unit[b] + noise
            rows.append(f"{a}_{b} " + " ".join(f"{x:.6f}" for x in p))
        # Two bigrams with a missing unigram exercise the skip path.
        rows.append("zzmissing_film " + " ".join("0.100000" for _ in range(DIM)))
        rows.append("film_zzabsent " + " ".join("0.100000" for _ in range(DIM)))
        f.write(f"{len(rows)} {DIM}\n")
        f.write("\n".join(rows) + "\n")

    print(f"vocabulary {len(vocab)}, general corpus {len(general)} sentences")


if __name__ == "__main__":
    main()
