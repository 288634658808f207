#!/usr/bin/env python3
"""Regenerates the shipped data/ directory.

Everything here is synthetic or hand-authored: small stand-in lexicons with
made-up scores, an independently compiled body-part list and cognition word
list, a morphology table built from a verb list with inflection rules, and
demographic rules plus vocabularies. Real lexicon distributions are loaded
through the same file formats.

    python3 tools/gen_data.py [--out data]
"""

import argparse
import re
from pathlib import Path

# ---------------------------------------------------------------------------
# Score lexicons. word: (valence, arousal, dominance)

VAD = {
    "happy": (0.96, 0.73, 0.72), "sad": (0.09, 0.33, 0.21), "love": (1.0, 0.52, 0.67),
    "hate": (0.06, 0.86, 0.61), "calm": (0.8, 0.09, 0.54), "angry": (0.12, 0.93, 0.66),
    "afraid": (0.1, 0.83, 0.2), "joy": (0.98, 0.82, 0.79), "pain": (0.08, 0.71, 0.25),
    "heart": (0.81, 0.52, 0.5), "aches": (0.16, 0.49, 0.24), "ache": (0.15, 0.48, 0.25),
    "home": (0.88, 0.25, 0.6), "walk": (0.7, 0.3, 0.55), "walked": (0.69, 0.31, 0.55),
    "book": (0.77, 0.23, 0.59), "friend": (0.92, 0.44, 0.66), "war": (0.04, 0.95, 0.7),
    "peace": (0.94, 0.1, 0.63), "storm": (0.2, 0.87, 0.54), "quiet": (0.66, 0.06, 0.42),
    "win": (0.93, 0.84, 0.92), "lose": (0.12, 0.58, 0.18), "tired": (0.27, 0.12, 0.23),
    "excited": (0.91, 0.94, 0.7), "bored": (0.19, 0.06, 0.26), "smile": (0.95, 0.5, 0.66),
    "cry": (0.13, 0.66, 0.2), "broken": (0.1, 0.56, 0.17), "hope": (0.9, 0.53, 0.64),
    "fear": (0.07, 0.84, 0.16), "trust": (0.89, 0.33, 0.71), "gift": (0.9, 0.6, 0.56),
    "sick": (0.1, 0.48, 0.2), "hurt": (0.09, 0.72, 0.24), "warm": (0.85, 0.38, 0.58),
    "cold": (0.28, 0.35, 0.4), "dark": (0.23, 0.49, 0.43), "bright": (0.86, 0.65, 0.68),
    "music": (0.91, 0.62, 0.6), "work": (0.54, 0.55, 0.66), "money": (0.8, 0.65, 0.85),
    "death": (0.02, 0.77, 0.26), "baby": (0.86, 0.52, 0.36), "kiss": (0.93, 0.79, 0.6),
    "alone": (0.2, 0.26, 0.28), "strong": (0.83, 0.72, 0.93), "weak": (0.21, 0.2, 0.1),
    "good": (0.93, 0.44, 0.71), "bad": (0.1, 0.56, 0.35), "great": (0.94, 0.64, 0.8),
    "terrible": (0.05, 0.77, 0.3), "okay": (0.65, 0.2, 0.5), "beat": (0.42, 0.81, 0.71),
    "fast": (0.62, 0.88, 0.68), "slow": (0.36, 0.13, 0.34), "sleep": (0.84, 0.04, 0.36),
    "party": (0.9, 0.91, 0.67), "stress": (0.11, 0.81, 0.3), "relax": (0.91, 0.05, 0.55),
    "broken heart": (0.04, 0.66, 0.12), "feel good": (0.92, 0.58, 0.68),
    "panic attack": (0.05, 0.96, 0.1), "best friend": (0.97, 0.6, 0.74),
    "out of control": (0.11, 0.91, 0.08), "piece of cake": (0.79, 0.35, 0.77),
}

EMOTIONS = {
    "anger": {"angry": 0.83, "hate": 0.83, "war": 0.75, "storm": 0.44, "hurt": 0.52, "beat": 0.5,
              "terrible": 0.52, "stress": 0.44, "broken": 0.35, "out of control": 0.6},
    "anticipation": {"hope": 0.67, "excited": 0.7, "party": 0.56, "gift": 0.55, "win": 0.53,
                     "money": 0.47, "walk": 0.23, "baby": 0.5},
    "disgust": {"hate": 0.64, "sick": 0.66, "terrible": 0.55, "bad": 0.5, "death": 0.44},
    "fear": {"afraid": 0.84, "fear": 0.92, "war": 0.88, "death": 0.9, "storm": 0.56, "dark": 0.5,
             "alone": 0.47, "panic attack": 0.93, "pain": 0.64, "sick": 0.55, "stress": 0.6},
    "joy": {"happy": 0.88, "joy": 0.98, "love": 0.83, "smile": 0.74, "party": 0.73, "friend": 0.57,
            "win": 0.74, "music": 0.59, "gift": 0.7, "kiss": 0.78, "good": 0.5, "great": 0.61,
            "feel good": 0.76, "best friend": 0.8, "peace": 0.64, "warm": 0.44},
    "sadness": {"sad": 0.84, "cry": 0.82, "pain": 0.69, "aches": 0.6, "ache": 0.58, "alone": 0.63,
                "broken": 0.63, "death": 0.91, "lose": 0.58, "tired": 0.41, "hurt": 0.72,
                "broken heart": 0.94, "cold": 0.3, "dark": 0.45, "sick": 0.56},
    "surprise": {"excited": 0.47, "gift": 0.61, "win": 0.48, "kiss": 0.44, "storm": 0.41},
    "nrc_trust": {"trust": 0.83, "friend": 0.69, "home": 0.5, "peace": 0.56, "best friend": 0.84,
                  "money": 0.44, "strong": 0.48, "calm": 0.41},
}

WCST = {
    "warmth": {"friend": 0.86, "love": 0.9, "kiss": 0.78, "smile": 0.84, "warm": 0.88, "baby": 0.8,
               "hate": 0.06, "cold": 0.14, "angry": 0.12, "gift": 0.79, "alone": 0.24},
    "competence": {"strong": 0.86, "win": 0.88, "work": 0.74, "weak": 0.12, "lose": 0.21,
                   "great": 0.72, "tired": 0.3, "piece of cake": 0.8},
    "sociability": {"party": 0.93, "friend": 0.91, "alone": 0.08, "music": 0.68, "quiet": 0.3,
                    "best friend": 0.94, "home": 0.48},
    "wcst_trust": {"trust": 0.93, "friend": 0.77, "home": 0.6, "war": 0.14, "money": 0.4},
}

WORRY = {
    "anxiety": {"stress": 0.88, "afraid": 0.91, "fear": 0.94, "panic attack": 0.98, "alone": 0.55,
                "sick": 0.62, "money": 0.47, "work": 0.44, "tired": 0.35, "dark": 0.38},
    "calmness": {"calm": 0.95, "peace": 0.93, "quiet": 0.84, "relax": 0.96, "sleep": 0.8,
                 "home": 0.66, "slow": 0.61, "warm": 0.55},
}

# ---------------------------------------------------------------------------
# Body parts: 292 phrases of one to three tokens.

BODY_UNIGRAMS = """
head face hair forehead eyebrow eyebrows eyelid eyelids eyelash eyelashes eye eyes ear ears earlobe
earlobes nose nostril nostrils cheek cheeks cheekbone cheekbones jaw jawline chin mouth lip lips tongue
tooth teeth gum gums throat neck nape shoulder shoulders collarbone collarbones arm arms armpit armpits
elbow elbows forearm forearms wrist wrists hand hands palm palms finger fingers thumb thumbs knuckle
knuckles fingernail fingernails nail nails chest breast breasts nipple nipples rib ribs ribcage stomach
belly tummy abdomen abs navel waist hip hips back spine buttocks butt bum groin pelvis leg legs thigh
thighs knee knees kneecap kneecaps shin shins calf calves ankle ankles foot feet heel heels toe toes
toenail toenails sole soles skin body brain skull heart lung lungs liver kidney kidneys bladder
intestine intestines gut guts bowel bowels colon appendix pancreas spleen gallbladder uterus womb ovary
ovaries prostate muscle muscles bone bones joint joints tendon tendons ligament ligaments vein veins
artery arteries blood nerve nerves flesh scalp temple temples eardrum eardrums pupil pupils retina
retinas iris sinus sinuses tonsils larynx esophagus trachea windpipe diaphragm torso limb limbs fist
fists lap sternum vertebra vertebrae cartilage marrow hamstring hamstrings biceps triceps quads glutes
freckles dimple dimples beard mustache moustache sideburns cervix thyroid pinky cornea eyeball eyeballs
""".split()

BODY_BIGRAMS = [
    "lower back", "upper back", "left hand", "right hand", "left arm", "right arm", "left leg",
    "right leg", "left eye", "right eye", "left foot", "right foot", "left knee", "right knee",
    "left ear", "right ear", "left shoulder", "right shoulder", "left hip", "right hip", "big toe",
    "little finger", "pinky finger", "index finger", "middle finger", "ring finger", "eye socket",
    "ear canal", "vocal cords", "rib cage", "spinal cord", "bone marrow", "blood vessels",
    "blood vessel", "lymph nodes", "lymph node", "adam's apple", "belly button", "shoulder blade",
    "shoulder blades", "wisdom teeth", "wisdom tooth", "front teeth", "lower lip", "upper lip",
    "upper arm", "lower leg", "achilles tendon", "rotator cuff", "hip bone", "jaw bone",
    "tear ducts", "taste buds", "sweat glands", "hair follicles", "heart valve", "small intestine",
    "large intestine", "immune system", "nervous system", "digestive tract", "pelvic floor",
    "thyroid gland", "frontal lobe", "prefrontal cortex", "soft palate", "tail bone", "funny bone",
    "left wrist", "right wrist", "left ankle", "right ankle", "left cheek", "right cheek",
]

BODY_TRIGRAMS = [
    "anterior cruciate ligament", "medial collateral ligament", "central nervous system",
    "left ring finger", "right ring finger", "left big toe", "right big toe", "left index finger",
    "right index finger", "left little finger", "right little finger", "lower back muscles",
]

# ---------------------------------------------------------------------------
# Cognition words: 98 unigrams in 11 categories.

COGNITION = [
    ("analyzing", "analyze analyse compare contrast examine investigate categorize differentiate distinguish"),
    ("learning", "learn study practice train rehearse master acquire discover educate"),
    ("decision-making", "decide choose select judge prioritize determine weigh resolve opt"),
    ("understanding", "understand comprehend realize grasp interpret recognize perceive know appreciate"),
    ("general cognition", "think consider believe wonder ponder reflect imagine suppose reason"),
    ("memory recall", "remember recall recollect memorize forget reminisce retrieve recite review"),
    ("problem solving", "solve calculate compute troubleshoot debug deduce infer estimate hypothesize"),
    ("explanation", "explain describe clarify illustrate elaborate justify demonstrate summarize define"),
    ("evaluating", "evaluate assess critique appraise criticize rate verify test argue"),
    ("creating", "create design invent compose construct devise formulate generate plan"),
    ("applying", "apply use implement execute employ operate utilize modify"),
]

# ---------------------------------------------------------------------------
# Morphology. Irregular verbs: base -> (3sg, past, past participle, gerund).

IRREGULAR = {
    "be": (None, None, "been", "being"), "have": ("has", "had", "had", "having"),
    "do": ("does", "did", "done", "doing"), "go": ("goes", "went", "gone", "going"),
    "say": ("says", "said", "said", "saying"), "get": ("gets", "got", "gotten", "getting"),
    "make": ("makes", "made", "made", "making"), "know": ("knows", "knew", "known", "knowing"),
    "think": ("thinks", "thought", "thought", "thinking"), "take": ("takes", "took", "taken", "taking"),
    "see": ("sees", "saw", "seen", "seeing"), "come": ("comes", "came", "come", "coming"),
    "give": ("gives", "gave", "given", "giving"), "find": ("finds", "found", "found", "finding"),
    "tell": ("tells", "told", "told", "telling"), "become": ("becomes", "became", "become", "becoming"),
    "leave": ("leaves", "left", "left", "leaving"), "feel": ("feels", "felt", "felt", "feeling"),
    "put": ("puts", "put", "put", "putting"), "bring": ("brings", "brought", "brought", "bringing"),
    "begin": ("begins", "began", "begun", "beginning"), "keep": ("keeps", "kept", "kept", "keeping"),
    "hold": ("holds", "held", "held", "holding"), "write": ("writes", "wrote", "written", "writing"),
    "stand": ("stands", "stood", "stood", "standing"), "hear": ("hears", "heard", "heard", "hearing"),
    "let": ("lets", "let", "let", "letting"), "mean": ("means", "meant", "meant", "meaning"),
    "meet": ("meets", "met", "met", "meeting"), "run": ("runs", "ran", "run", "running"),
    "pay": ("pays", "paid", "paid", "paying"), "sit": ("sits", "sat", "sat", "sitting"),
    "speak": ("speaks", "spoke", "spoken", "speaking"), "lead": ("leads", "led", "led", "leading"),
    "read": ("reads", "read", "read", "reading"), "grow": ("grows", "grew", "grown", "growing"),
    "lose": ("loses", "lost", "lost", "losing"), "fall": ("falls", "fell", "fallen", "falling"),
    "send": ("sends", "sent", "sent", "sending"), "build": ("builds", "built", "built", "building"),
    "understand": ("understands", "understood", "understood", "understanding"),
    "draw": ("draws", "drew", "drawn", "drawing"), "break": ("breaks", "broke", "broken", "breaking"),
    "spend": ("spends", "spent", "spent", "spending"), "cut": ("cuts", "cut", "cut", "cutting"),
    "rise": ("rises", "rose", "risen", "rising"), "drive": ("drives", "drove", "driven", "driving"),
    "buy": ("buys", "bought", "bought", "buying"), "wear": ("wears", "wore", "worn", "wearing"),
    "choose": ("chooses", "chose", "chosen", "choosing"), "seek": ("seeks", "sought", "sought", "seeking"),
    "throw": ("throws", "threw", "thrown", "throwing"), "catch": ("catches", "caught", "caught", "catching"),
    "win": ("wins", "won", "won", "winning"), "forget": ("forgets", "forgot", "forgotten", "forgetting"),
    "sell": ("sells", "sold", "sold", "selling"), "fight": ("fights", "fought", "fought", "fighting"),
    "teach": ("teaches", "taught", "taught", "teaching"), "eat": ("eats", "ate", "eaten", "eating"),
    "sleep": ("sleeps", "slept", "slept", "sleeping"), "sing": ("sings", "sang", "sung", "singing"),
    "swim": ("swims", "swam", "swum", "swimming"), "drink": ("drinks", "drank", "drunk", "drinking"),
    "fly": ("flies", "flew", "flown", "flying"), "ride": ("rides", "rode", "ridden", "riding"),
    "hit": ("hits", "hit", "hit", "hitting"), "hurt": ("hurts", "hurt", "hurt", "hurting"),
    "shut": ("shuts", "shut", "shut", "shutting"), "cost": ("costs", "cost", "cost", "costing"),
    "quit": ("quits", "quit", "quit", "quitting"), "feed": ("feeds", "fed", "fed", "feeding"),
    "forgive": ("forgives", "forgave", "forgiven", "forgiving"), "hide": ("hides", "hid", "hidden", "hiding"),
    "shake": ("shakes", "shook", "shaken", "shaking"), "steal": ("steals", "stole", "stolen", "stealing"),
    "wake": ("wakes", "woke", "woken", "waking"), "bite": ("bites", "bit", "bitten", "biting"),
    "blow": ("blows", "blew", "blown", "blowing"), "dig": ("digs", "dug", "dug", "digging"),
    "hang": ("hangs", "hung", "hung", "hanging"), "ring": ("rings", "rang", "rung", "ringing"),
    "shoot": ("shoots", "shot", "shot", "shooting"), "sink": ("sinks", "sank", "sunk", "sinking"),
    "swing": ("swings", "swung", "swung", "swinging"), "tear": ("tears", "tore", "torn", "tearing"),
    "bend": ("bends", "bent", "bent", "bending"), "bleed": ("bleeds", "bled", "bled", "bleeding"),
    "flee": ("flees", "fled", "fled", "fleeing"), "freeze": ("freezes", "froze", "frozen", "freezing"),
    "lend": ("lends", "lent", "lent", "lending"), "spread": ("spreads", "spread", "spread", "spreading"),
    "strike": ("strikes", "struck", "struck", "striking"), "swear": ("swears", "swore", "sworn", "swearing"),
    "weep": ("weeps", "wept", "wept", "weeping"), "bet": ("bets", "bet", "bet", "betting"),
    "beat": ("beats", "beat", "beaten", "beating"), "deal": ("deals", "dealt", "dealt", "dealing"),
    "learn": ("learns", "learned", "learned", "learning"), "dream": ("dreams", "dreamed", "dreamed", "dreaming"),
    "lie": ("lies", "lay", "lain", "lying"), "die": ("dies", "died", "died", "dying"),
}

# Regular verbs. Nouns that double as verbs ("hand", "face", "book", "head")
# are left out so that "her hand" keeps its possessive reading.
REGULAR = """
walk talk work play love like want need look help ask call try move live believe happen turn start
show seem open close change watch follow stop create remember consider appear allow add serve die
send expect stay reach kill remain suggest raise pass report decide pull carry develop return explain
hope join agree enjoy smile laugh cry worry wonder marry visit listen travel finish arrive answer
clean cook dance jump kiss miss wash wish climb learn fix hate plan drop shout scream stare pray
wait cross fail fill hurry kick knock pick push rain relax rest save share shop smell smoke touch
trust use want care cause cheer chase cough count cover deliver describe destroy dress earn enter
fear guess hug hunt improve invite joke lift manage mention notice offer order pack paint prefer
prepare promise protect prove receive refuse reply rescue search settle sign sneeze solve study
suffer support surprise thank tie trip vote warn whisper wink yell analyze compare decide recall
understand recognize realize imagine assume discover explore imagine mourn breathe heal ache
""".split()

MODALS_NONE = {"can", "could", "would", "should", "may", "might", "must", "will", "shall"}

CONTRACTIONS = {
    "i'm": "present", "you're": "present", "we're": "present", "they're": "present", "he's": "present",
    "she's": "present", "it's": "present", "that's": "present", "there's": "present", "isn't": "present",
    "aren't": "present", "don't": "present", "doesn't": "present", "i've": "present", "we've": "present",
    "you've": "present", "they've": "present", "hasn't": "present", "haven't": "present",
    "wasn't": "past", "weren't": "past", "didn't": "past", "hadn't": "past",
}

DOUBLE_FINAL = {"stop", "plan", "drop", "trip", "shop", "hug", "jog", "chat", "nod", "rob", "beg", "wink"} - {"wink"}


def third_singular(v):
    if re.search(r"(s|x|z|ch|sh)$", v):
        return v + "es"
    if re.search(r"[^aeiou]y$", v):
        return v[:-1] + "ies"
    if v.endswith("o"):
        return v + "es"
    return v + "s"


def past(v):
    if v.endswith("e"):
        return v + "d"
    if re.search(r"[^aeiou]y$", v):
        return v[:-1] + "ied"
    if v in DOUBLE_FINAL:
        return v + v[-1] + "ed"
    return v + "ed"


def gerund(v):
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not re.search(r"(ee|ye|oe)$", v):
        return v[:-1] + "ing"
    if v in DOUBLE_FINAL:
        return v + v[-1] + "ing"
    return v + "ing"


def morph_table():
    tags = {}

    def tag(form, t):
        tags.setdefault(form, set()).add(t)

    for base, (s3, pst, pp, ger) in IRREGULAR.items():
        tag(base, "base")
        if base != "be":
            tag(base, "present")
            tag(s3, "present")
            tag(pst, "past")
        tag(ger, "present")
        # Past participles count as past unless they coincide with the base
        # form ("run", "come"), where the base reading wins.
        if pp != base:
            tag(pp, "past")
    for f in ("am", "is", "are"):
        tag(f, "present")
    for f in ("was", "were"):
        tag(f, "past")
    for base in dict.fromkeys(REGULAR):
        if base in IRREGULAR:
            continue
        tag(base, "base")
        tag(base, "present")
        tag(third_singular(base), "present")
        tag(past(base), "past")
        tag(gerund(base), "present")
    for form, t in CONTRACTIONS.items():
        tag(form, t)
    order = {"past": 0, "present": 1, "base": 2}
    return {f: sorted(t, key=order.get) for f, t in sorted(tags.items())}


# ---------------------------------------------------------------------------
# Demographics

GENDER = [
    ("woman", "female"), ("female", "female"), ("girl", "female"), ("lady", "female"), ("gal", "female"),
    ("man", "male"), ("male", "male"), ("guy", "male"), ("dude", "male"), ("boy", "male"),
    ("non-binary", "nonbinary"), ("nonbinary", "nonbinary"), ("enby", "nonbinary"),
    ("genderqueer", "nonbinary"), ("genderfluid", "genderfluid"), ("agender", "agender"),
    ("trans woman", "trans_female"), ("transwoman", "trans_female"), ("mtf", "trans_female"),
    ("trans man", "trans_male"), ("transman", "trans_male"), ("ftm", "trans_male"),
]
GENDER_MODIFIERS = ["young", "old", "single", "married", "divorced", "straight", "gay", "bi", "cis",
                    "proud", "happily", "white", "black", "asian", "middle-aged", "older", "grown"]

RELIGION = [
    ("christian", "christianity"), ("catholic", "christianity"), ("protestant", "christianity"),
    ("baptist", "christianity"), ("methodist", "christianity"), ("lutheran", "christianity"),
    ("evangelical", "christianity"), ("orthodox christian", "christianity"), ("mormon", "mormonism"),
    ("muslim", "islam"), ("sunni", "islam"), ("shia", "islam"), ("jew", "judaism"), ("jewish", "judaism"),
    ("hindu", "hinduism"), ("buddhist", "buddhism"), ("sikh", "sikhism"), ("atheist", "atheism"),
    ("agnostic", "agnosticism"), ("pagan", "paganism"), ("wiccan", "paganism"), ("jain", "jainism"),
    ("christianity", "christianity"), ("catholicism", "christianity"), ("islam", "islam"),
    ("judaism", "judaism"), ("hinduism", "hinduism"), ("buddhism", "buddhism"), ("sikhism", "sikhism"),
    ("atheism", "atheism"), ("agnosticism", "agnosticism"), ("paganism", "paganism"),
]
RELIGION_MODIFIERS = ["devout", "practicing", "practising", "lapsed", "born-again", "former", "proud",
                      "strict", "secular", "non-practicing", "reform", "conservative", "orthodox"]

COUNTRY = [
    ("united states", "united states"), ("the united states", "united states"), ("usa", "united states"),
    ("the usa", "united states"), ("the us", "united states"), ("america", "united states"),
    ("the states", "united states"), ("canada", "canada"), ("mexico", "mexico"), ("brazil", "brazil"),
    ("argentina", "argentina"), ("chile", "chile"), ("colombia", "colombia"), ("peru", "peru"),
    ("united kingdom", "united kingdom"), ("the uk", "united kingdom"), ("uk", "united kingdom"),
    ("england", "united kingdom"), ("scotland", "united kingdom"), ("wales", "united kingdom"),
    ("ireland", "ireland"), ("france", "france"), ("germany", "germany"), ("spain", "spain"),
    ("portugal", "portugal"), ("italy", "italy"), ("the netherlands", "netherlands"),
    ("netherlands", "netherlands"), ("holland", "netherlands"), ("belgium", "belgium"),
    ("switzerland", "switzerland"), ("austria", "austria"), ("sweden", "sweden"), ("norway", "norway"),
    ("denmark", "denmark"), ("finland", "finland"), ("poland", "poland"), ("greece", "greece"),
    ("turkey", "turkey"), ("russia", "russia"), ("ukraine", "ukraine"), ("romania", "romania"),
    ("hungary", "hungary"), ("czech republic", "czech republic"), ("israel", "israel"),
    ("egypt", "egypt"), ("nigeria", "nigeria"), ("kenya", "kenya"), ("south africa", "south africa"),
    ("ethiopia", "ethiopia"), ("ghana", "ghana"), ("morocco", "morocco"), ("india", "india"),
    ("pakistan", "pakistan"), ("bangladesh", "bangladesh"), ("china", "china"), ("japan", "japan"),
    ("south korea", "south korea"), ("korea", "south korea"), ("vietnam", "vietnam"),
    ("thailand", "thailand"), ("philippines", "philippines"), ("the philippines", "philippines"),
    ("indonesia", "indonesia"), ("malaysia", "malaysia"), ("singapore", "singapore"),
    ("australia", "australia"), ("new zealand", "new zealand"), ("iran", "iran"), ("iraq", "iraq"),
    ("saudi arabia", "saudi arabia"),
]

CITY = [
    ("new york", "new york city"), ("new york city", "new york city"), ("nyc", "new york city"),
    ("los angeles", "los angeles"), ("chicago", "chicago"), ("houston", "houston"), ("phoenix", "phoenix"),
    ("philadelphia", "philadelphia"), ("philly", "philadelphia"), ("san antonio", "san antonio"),
    ("san diego", "san diego"), ("dallas", "dallas"), ("austin", "austin"), ("san francisco", "san francisco"),
    ("seattle", "seattle"), ("denver", "denver"), ("boston", "boston"), ("portland", "portland"),
    ("atlanta", "atlanta"), ("miami", "miami"), ("detroit", "detroit"), ("minneapolis", "minneapolis"),
    ("nashville", "nashville"), ("las vegas", "las vegas"), ("toronto", "toronto"), ("vancouver", "vancouver"),
    ("montreal", "montreal"), ("calgary", "calgary"), ("ottawa", "ottawa"), ("london", "london"),
    ("manchester", "manchester"), ("birmingham", "birmingham"), ("glasgow", "glasgow"),
    ("edinburgh", "edinburgh"), ("dublin", "dublin"), ("paris", "paris"), ("berlin", "berlin"),
    ("munich", "munich"), ("hamburg", "hamburg"), ("madrid", "madrid"), ("barcelona", "barcelona"),
    ("lisbon", "lisbon"), ("rome", "rome"), ("milan", "milan"), ("amsterdam", "amsterdam"),
    ("brussels", "brussels"), ("vienna", "vienna"), ("zurich", "zurich"), ("stockholm", "stockholm"),
    ("oslo", "oslo"), ("copenhagen", "copenhagen"), ("helsinki", "helsinki"), ("warsaw", "warsaw"),
    ("prague", "prague"), ("budapest", "budapest"), ("athens", "athens"), ("istanbul", "istanbul"),
    ("moscow", "moscow"), ("kyiv", "kyiv"), ("cairo", "cairo"), ("lagos", "lagos"), ("nairobi", "nairobi"),
    ("johannesburg", "johannesburg"), ("cape town", "cape town"), ("mumbai", "mumbai"),
    ("delhi", "delhi"), ("new delhi", "delhi"), ("bangalore", "bangalore"), ("bengaluru", "bangalore"),
    ("karachi", "karachi"), ("dhaka", "dhaka"), ("beijing", "beijing"), ("shanghai", "shanghai"),
    ("hong kong", "hong kong"), ("tokyo", "tokyo"), ("osaka", "osaka"), ("seoul", "seoul"),
    ("manila", "manila"), ("jakarta", "jakarta"), ("bangkok", "bangkok"), ("sydney", "sydney"),
    ("melbourne", "melbourne"), ("brisbane", "brisbane"), ("perth", "perth"), ("auckland", "auckland"),
    ("mexico city", "mexico city"), ("sao paulo", "sao paulo"), ("buenos aires", "buenos aires"),
    ("tel aviv", "tel aviv"), ("dubai", "dubai"),
]
PLACE_MODIFIERS = [("the", "-"), ("beautiful", "-"), ("sunny", "-"), ("rainy", "-"), ("downtown", "-")]

# surface -> (SOC 2018 code, title)
OCCUPATION = [
    ("software engineer", "15-1252"), ("software developer", "15-1252"), ("programmer", "15-1251"),
    ("computer programmer", "15-1251"), ("web developer", "15-1254"), ("data scientist", "15-2051"),
    ("teacher", "25-2000"), ("elementary school teacher", "25-2021"), ("high school teacher", "25-2031"),
    ("professor", "25-1099"), ("librarian", "25-4022"), ("nurse", "29-1141"),
    ("registered nurse", "29-1141"), ("doctor", "29-1229"), ("physician", "29-1229"),
    ("surgeon", "29-1249"), ("dentist", "29-1021"), ("pharmacist", "29-1051"),
    ("veterinarian", "29-1131"), ("vet", "29-1131"), ("paramedic", "29-2043"),
    ("dental hygienist", "29-1292"), ("lawyer", "23-1011"), ("attorney", "23-1011"),
    ("paralegal", "23-2011"), ("accountant", "13-2011"), ("financial analyst", "13-2051"),
    ("project manager", "13-1082"), ("musician", "27-2042"), ("singer", "27-2042"),
    ("journalist", "27-3023"), ("reporter", "27-3023"), ("writer", "27-3043"), ("author", "27-3043"),
    ("novelist", "27-3043"), ("editor", "27-3041"), ("photographer", "27-4021"),
    ("graphic designer", "27-1024"), ("artist", "27-1013"), ("actor", "27-2011"), ("actress", "27-2011"),
    ("chef", "35-1011"), ("cook", "35-2014"), ("waiter", "35-3031"), ("waitress", "35-3031"),
    ("bartender", "35-3011"), ("cashier", "41-2011"), ("realtor", "41-9022"),
    ("real estate agent", "41-9022"), ("receptionist", "43-4171"), ("secretary", "43-6014"),
    ("electrician", "47-2111"), ("plumber", "47-2152"), ("carpenter", "47-2031"), ("mechanic", "49-3023"),
    ("truck driver", "53-3032"), ("pilot", "53-2011"), ("flight attendant", "53-2031"),
    ("police officer", "33-3051"), ("cop", "33-3051"), ("firefighter", "33-2011"), ("engineer", "17-2199"),
    ("civil engineer", "17-2051"), ("mechanical engineer", "17-2141"), ("electrical engineer", "17-2071"),
    ("architect", "17-1011"), ("chemist", "19-2031"), ("physicist", "19-2012"), ("economist", "19-3011"),
    ("psychologist", "19-3039"), ("therapist", "21-1018"), ("social worker", "21-1029"),
    ("pastor", "21-2011"), ("priest", "21-2011"), ("farmer", "11-9013"), ("ceo", "11-1011"),
    ("janitor", "37-2011"), ("hairdresser", "39-5012"), ("hairstylist", "39-5012"), ("barber", "39-5011"),
]
OCCUPATION_MODIFIERS = ["senior", "junior", "lead", "professional", "freelance", "retired", "former",
                        "full-time", "part-time", "certified", "licensed", "self-employed", "staff", "head"]


def alternation(surfaces):
    # Longest first so that the regex prefers "trans woman" over "trans".
    return "|".join(re.escape(s) for s in sorted(surfaces, key=lambda s: (-len(s), s)))


def rules():
    first = r"\b(?:i am|i'm|im)"
    not_quantity = (r"(?![0-9%']|\.[0-9]|,[0-9]| ?(?:percent|times|pounds|lbs|kg|kilos|miles|km|feet|ft|"
                    r"inches|foot|cm|minutes|mins|hours|hrs|days|weeks|months|dollars|bucks|points|pages|"
                    r"people|of|out of|in a row|%))")
    age_suffix = r"(?: years old| years of age| yrs old| year old| yo| y/o)?"
    gmods = alternation(GENDER_MODIFIERS)
    rmods = alternation(RELIGION_MODIFIERS)
    genders = alternation(s for s, _ in GENDER)
    religions = alternation(s for s, _ in RELIGION)
    place = r"((?:[a-z][a-z'-]*)(?: [a-z][a-z'-]*){0,3})"
    occ = r"((?:[a-z][a-z'-]*)(?: [a-z][a-z'-]*){0,3})"
    return [
        ("age_i_am", "age", "age", "i am|i'm|im ",
         first + r" ([0-9]{1,3})" + age_suffix + not_quantity),
        ("age_turned", "age", "age", "turned",
         r"\bi (?:just )?turned ([0-9]{1,3})" + age_suffix + not_quantity),
        ("age_n_year_old", "age", "age", "year old|yo|y/o|-year-old",
         first + r" an? ([0-9]{2})(?: year old|-year-old| ?yo| ?y/o)(?![a-z0-9])"),
        ("age_my_age", "age", "age", "my age",
         r"\bmy age is ([0-9]{1,3})" + not_quantity),
        ("birth_year_born", "birth_year", "birth_year", "born",
         r"(?:^|[.!?;,] |\bi was |\bi am |\bi'm )born in ([0-9]{4})(?![0-9])"),
        ("gender_i_am", "gender", "vocab:gender", "i am|i'm|im |identify",
         r"\b(?:i am|i'm|im|i identify as) (?:an? )?(?:[0-9]{2}(?: year old|-year-old| ?yo| ?y/o) )?"
         r"((?:(?:" + gmods + r") )*(?:" + genders + r"))(?![a-z'-]| of | enough| up )"),
        ("occupation_i_am", "occupation", "vocab:occupation_soc", "i am|i'm|im ",
         first + r" (?:an? |the )?" + occ),
        ("occupation_work_as", "occupation", "vocab:occupation_soc", "as a|as an",
         r"\b(?:i work|i'm working|i am working|i'm employed|i am employed|i currently work|"
         r"i work at [a-z0-9' &.-]{1,40}?|i'm employed at [a-z0-9' &.-]{1,40}?) as (?:an? |the )?" + occ),
        ("country_from", "country", "vocab:country", "from",
         r"\b(?:i am|i'm|im|i come) (?:originally )?from " + place),
        ("country_live", "country", "vocab:country", "live|grew|born|moved",
         r"\b(?:i live|i currently live|i grew up|i was born|i moved) (?:in|to) " + place),
        ("city_from", "city", "vocab:city", "from",
         r"\b(?:i am|i'm|im|i come) (?:originally )?from " + place),
        ("city_live", "city", "vocab:city", "live|grew|born|moved|based",
         r"\b(?:i live|i currently live|i grew up|i was born|i moved|i'm based|i am based) "
         r"(?:in|to) " + place),
        ("religion_i_am", "religion", "vocab:religion", "i am|i'm|im |raised",
         r"\b(?:i am|i'm|im|i was raised|i was raised as) (?:an? )?"
         r"((?:(?:" + rmods + r") )*(?:" + religions + r"))(?![a-z'-])"),
        ("religion_as", "religion", "vocab:religion", "as a|as an",
         r"\bas an? ((?:(?:" + rmods + r") )*(?:" + religions + r"))(?=,? (?:i|we|myself)\b)"),
        ("religion_convert", "religion", "vocab:religion", "convert|practice|practise|religion",
         r"\b(?:i converted to|i practice|i practise|my religion is) ((?:(?:" + rmods + r") )*(?:"
         + religions + r"))(?![a-z'-])"),
    ]


# ---------------------------------------------------------------------------

def write_tsv(path, rows, header=None):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        if header:
            for h in header:
                f.write(f"# {h}\n")
        for row in rows:
            f.write("\t".join(str(c) for c in row) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    out = Path(ap.parse_args().out)
    synthetic = "synthetic stand-in scores; load a real distribution with the same format"

    for i, dim in enumerate(("valence", "arousal", "dominance")):
        write_tsv(out / "lexicons" / f"{dim}.tsv", sorted((w, v[i]) for w, v in VAD.items()), [synthetic])
    for group in (EMOTIONS, WCST, WORRY):
        for name, entries in group.items():
            write_tsv(out / "lexicons" / f"{name}.tsv", sorted(entries.items()), [synthetic])

    body = BODY_UNIGRAMS + BODY_BIGRAMS + BODY_TRIGRAMS
    assert len(body) == len(set(body)), [b for b in body if body.count(b) > 1]
    assert len(body) == 292, len(body)
    write_tsv(out / "body_parts.txt", [(b,) for b in body], ["body-part phrases, one per line"])

    cog = [(w, cat) for cat, words in COGNITION for w in words.split()]
    assert len(cog) == 98 and len({w for w, _ in cog}) == 98 and len(COGNITION) == 11, len(cog)
    write_tsv(out / "cognition.tsv", cog, ["thinking words: term<TAB>category"])

    table = morph_table()
    write_tsv(out / "morph.tsv", [(f, ";".join(t)) for f, t in table.items()],
              ["form<TAB>tags (past, present, base); generated by tools/gen_data.py"])

    demo = out / "demographics"
    write_tsv(demo / "gender.tsv", GENDER + [(m, "-") for m in GENDER_MODIFIERS])
    write_tsv(demo / "religion.tsv", RELIGION + [(m, "-") for m in RELIGION_MODIFIERS])
    write_tsv(demo / "country.tsv", COUNTRY + PLACE_MODIFIERS)
    write_tsv(demo / "city.tsv", CITY + PLACE_MODIFIERS)
    write_tsv(demo / "occupation_soc.tsv",
              [(s, code) for s, code in OCCUPATION] + [(m, "-") for m in OCCUPATION_MODIFIERS],
              ["surface<TAB>SOC 2018 code; hand-mapped subset of the BLS taxonomy"])
    write_tsv(demo / "rules.tsv", rules(), ["id<TAB>attribute<TAB>normalizer<TAB>triggers<TAB>pattern"])


if __name__ == "__main__":
    main()
