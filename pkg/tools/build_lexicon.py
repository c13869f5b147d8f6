"""Regenerate src/tempus/data/lexicon.tsv from the word lists below.

Run from the repository root:  python3 tools/build_lexicon.py
"""

import pathlib

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "tempus" / "data" / "lexicon.tsv"

IRREGULAR = """
arise arose arisen; awake awoke awoken; be was been; bear bore born; beat beat beaten;
become became become; begin began begun; bend bent bent; bet bet bet; bid bid bid;
bind bound bound; bite bit bitten; bleed bled bled; blow blew blown; break broke broken;
breed bred bred; bring brought brought; build built built; burn burnt burnt;
burst burst burst; buy bought bought; cast cast cast; catch caught caught;
choose chose chosen; cling clung clung; come came come; cost cost cost; creep crept crept;
cut cut cut; deal dealt dealt; dig dug dug; do did done; draw drew drawn; drink drank drunk;
drive drove driven; eat ate eaten; fall fell fallen; feed fed fed; feel felt felt;
fight fought fought; find found found; flee fled fled; fly flew flown; forbid forbade forbidden;
forget forgot forgotten; forgive forgave forgiven; freeze froze frozen; get got gotten;
give gave given; go went gone; grind ground ground; grow grew grown; hang hung hung;
have had had; hear heard heard; hide hid hidden; hit hit hit; hold held held; hurt hurt hurt;
keep kept kept; kneel knelt knelt; know knew known; lay laid laid; lead led led; leave left left;
lend lent lent; let let let; lie lay lain; light lit lit; lose lost lost; make made made;
mean meant meant; meet met met; pay paid paid; put put put; quit quit quit; read read read;
ride rode ridden; ring rang rung; rise rose risen; run ran run; say said said; see saw seen;
seek sought sought; sell sold sold; send sent sent; set set set; shake shook shaken;
shed shed shed; shine shone shone; shoot shot shot; show showed shown; shrink shrank shrunk;
shut shut shut; sing sang sung; sink sank sunk; sit sat sat; sleep slept slept;
slide slid slid; speak spoke spoken; spend spent spent; spin spun spun; split split split;
spread spread spread; spring sprang sprung; stand stood stood; steal stole stolen;
stick stuck stuck; sting stung stung; strike struck struck; swear swore sworn;
sweep swept swept; swim swam swum; swing swung swung; take took taken; teach taught taught;
tear tore torn; tell told told; think thought thought; throw threw thrown;
understand understood understood; undertake undertook undertaken; upset upset upset;
wake woke woken; wear wore worn; win won won; withdraw withdrew withdrawn; write wrote written;
overcome overcame overcome; overtake overtook overtaken; rebuild rebuilt rebuilt;
mislead misled misled; oversee oversaw overseen; foresee foresaw foreseen; forecast forecast forecast
"""

REGULAR_VERBS = """
accept accuse achieve acquire act add address adjust admit adopt advance advise affect agree aim
allow announce answer appear apply appoint approach approve argue arrange arrest arrive ask assess
assign assist assume attach attack attempt attend attract avoid award back ban base battle beg
believe belong benefit block boost borrow bomb bounce calculate call cancel capture care carry
cause celebrate challenge change charge chase check cheer claim clean clear climb close collapse
collect combine comment commit compare compete complain complete concern conclude condemn confirm
connect consider consist contact contain continue contribute control convert convict cook copy
count cover crash create cross crush cry damage dance decide declare decline defeat defend delay
deliver demand deny depart depend describe deserve design destroy detain determine develop die
disappear discover discuss dismiss display dissolve divide donate doubt drop earn ease elect
employ enable encourage end endorse enforce engage enjoy ensure enter equip escape establish
estimate evacuate examine exceed exist expand expect explain explode export express extend face
fail fear file fill finance finish fire fix flood focus follow force form found free fund gain
gather generate govern grab grant greet guarantee guess halt handle happen hate head help hire
hope host hunt identify ignore imagine impose improve include increase indicate inform injure
insist inspect install intend interview introduce invade invent invest investigate invite involve
issue join judge jump kick kill kiss knock label land last laugh launch learn like limit link list
listen live load locate lock look love maintain manage mark marry match matter measure mention
merge miss mix monitor move murder name need negotiate nominate note notice object observe obtain
occupy occur offer open operate oppose order organize own pass perform permit persuade phone pick
place plan plant play please plunge point post postpone pour praise pray predict prefer prepare
present preserve press pretend prevent print proceed process produce promise promote propose
protect protest prove provide publish pull punish purchase push qualify question race rain raise
rank reach react realize receive recognize recommend record recover recruit reduce refer reflect
refuse regard register reject relate release rely remain remember remind remove rename renew
repair repeat replace reply report represent request require rescue resign resist resolve
respond rest restore result retain retire return reveal review reward rob roll rule rush sail
save schedule score search secure seize select settle share shift shock shout sign signal slip
smile solve sort sound spark spill spoil start stay step stop store strengthen stress stretch
study submit succeed suffer suggest supply support suppose surprise surrender surround survive
suspect suspend switch talk target taste terminate test thank threaten tie total touch tour trade
train transfer transform travel treat trust try turn unite unveil urge use value vanish visit vote
wait walk want warn wash watch welcome wish wonder work worry wound yield
"""

NOUNS = """
accident account action activity administration agency agreement aid aircraft airport alliance
ambassador amount analyst anniversary announcement answer area army arrival article artist
assembly attack attempt attention audience authority award bank base battle beach bill
board boat body bomb bomber book border boss bridge budget building bus business cabinet
campaign candidate capital captain car case cash ceasefire center century ceremony chairman chance
change charge chief child church citizen city claim class client coach coalition coast college
commander commission committee community company competition concert conference conflict
congress contract control council country court crash credit crime crisis crowd cup customer
damage deal death debate debt decade decision defense delegation demand department deputy
detail director disaster discussion dispute district doctor document dollar drug earthquake
economy editor effort election embassy emergency employee end energy engine enemy equipment
evidence exchange executive explosion factory family farm farmer fee festival field fight
figure film fire firm flight flood football force forecast fund game gas general goal government
governor group growth guard guest gun hall head headquarters health hearing history holiday home
hospital hostage hotel house hurricane idea industry inflation information inquiry interest
interview investigation investor island issue job journalist judge jury killing lab land law
lawyer leader league lease letter level license life line loan lot machine majority manager
market match mayor meeting member message military minister minute mission model money month
morning move movie museum nation navy network news newspaper night number offer office officer
official oil operation opposition order organization owner paper parliament part partner party
passenger patient payment peace people period person phone pilot place plan plane plant player
police policy politician port position post power premier president press price prime prison
prisoner problem process product profit program project property proposal prosecutor protest
province public quarter question race radio rate reactor rebel record referendum reform region
report reporter republic rescue research resident resolution rest restaurant result revenue
right river road rocket round rule sale scandal school scientist season seat second secretary
security senate senator service session share ship shop shot side site situation soldier source
speaker spokesman spokeswoman sport staff stage standard start state statement station step
stock storm story strategy street strike student study summit supply support surface suspect
system talk tax teacher team test ticket time title tone total tour town trade treaty trial
troop truck union unit university vehicle victim victory video village violence visit volleyball
vote voter war warning water wave weapon week weekend win winner witness woman worker world
year zone man men women children people car cars fans shares prices talks troops
"""

NOUN_IRREGULAR_PLURALS = {
    "man": "men", "woman": "women", "child": "children", "person": "people",
    "foot": "feet", "tooth": "teeth", "mouse": "mice", "crisis": "crises", "analysis": "analyses",
}

ADJECTIVES = """
able big black bad best better new old young good great high low large small long short
early late major minor main local national international foreign public private political
economic military financial social federal final first second third last next own other
many several few strong weak hard easy free full general important key likely local open
possible recent serious special strange total wide whole cold hot warm dry wet heavy light
quick slow rich poor red green blue white human legal nuclear annual daily weekly monthly
yearly quarterly former senior junior chief central northern southern eastern western
"""

ADVERBS = """
also again already almost always ago away back currently early even eventually ever finally
first hardly here however immediately instead just later earlier meanwhile then never now
nearly often once only perhaps quickly rarely recently soon still sometimes there today
tomorrow yesterday tonight together very well yet annually hourly nightly more most less least
"""

PREPOSITIONS = """
about above across after against along amid among around as at before behind below beneath
beside besides between beyond by despite during except for from in inside into like near of
off on onto out outside over past per since than through throughout till to toward towards
under underneath unlike until up upon via with within without
"""

DETERMINERS = """
a an the this that these those each every some any no all both either neither another
my your his her its our their which whose what
"""

OTHER_CLOSED = """
and or but nor so yet if because while when whereas although though unless whether
i you he she it we they me him us them myself himself herself itself ourselves themselves
who whom not n't there
"""

NUMBER_WORDS = """
zero one two three four five six seven eight nine ten eleven twelve thirteen fourteen fifteen
sixteen seventeen eighteen nineteen twenty thirty forty fifty sixty seventy eighty ninety
hundred thousand million billion dozen
"""

ORDINALS = """
first second third fourth fifth sixth seventh eighth ninth tenth eleventh twelfth
"""

TEMPORAL_NOUNS = """
second minute hour day week month year decade century morning afternoon evening night
noon midnight weekend quarter season spring summer autumn fall winter
"""

MONTHS = "january february march april may june july august september october november december"
WEEKDAYS = "monday tuesday wednesday thursday friday saturday sunday"

AUX_FORMS = {
    "be": ["be", "am", "is", "are", "was", "were", "been", "being"],
    "have": ["have", "has", "had", "having"],
    "do": ["do", "does", "did", "done", "doing"],
    "will": ["will"], "would": ["would"], "can": ["can"], "could": ["could"], "may": ["may"],
    "might": ["might"], "shall": ["shall"], "should": ["should"], "must": ["must"],
}

VOWELS = set("aeiou")


def _double_final(base):
    # CVC monosyllables double the final consonant: stop -> stopped
    if len(base) < 3 or base[-1] in "wxy" or base[-1] in VOWELS:
        return False
    if base[-2] not in VOWELS or base[-3] in VOWELS:
        return False
    vowel_groups = sum(1 for i, c in enumerate(base) if c in VOWELS and (i == 0 or base[i - 1] not in VOWELS))
    return vowel_groups == 1


def regular_forms(base):
    if base.endswith("e"):
        past, ing = base + "d", base[:-1] + "ing"
    elif base.endswith("y") and base[-2] not in VOWELS:
        past, ing = base[:-1] + "ied", base + "ing"
    elif _double_final(base):
        past, ing = base + base[-1] + "ed", base + base[-1] + "ing"
    else:
        past, ing = base + "ed", base + "ing"
    return past, past, ing_form(base), third_person(base)


def third_person(base):
    if base.endswith(("s", "sh", "ch", "x", "z", "o")):
        return base + "es"
    if base.endswith("y") and base[-2] not in VOWELS:
        return base[:-1] + "ies"
    return base + "s"


def ing_form(base):
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and not base.endswith(("ee", "ye", "oe")):
        return base[:-1] + "ing"
    if _double_final(base):
        return base + base[-1] + "ing"
    return base + "ing"


def plural(noun):
    if noun in NOUN_IRREGULAR_PLURALS:
        return NOUN_IRREGULAR_PLURALS[noun]
    if noun.endswith(("s", "sh", "ch", "x", "z")):
        return noun + "es"
    if noun.endswith("y") and noun[-2] not in VOWELS:
        return noun[:-1] + "ies"
    return noun + "s"


def build():
    entries = {}

    def add(surface, lemma, pos, override=False):
        surface = surface.lower()
        if override or surface not in entries:
            entries[surface] = (lemma, pos)

    for lemma, forms in AUX_FORMS.items():
        for f in forms:
            add(f, lemma, "VERB", override=True)

    for chunk in IRREGULAR.split(";"):
        parts = chunk.split()
        if not parts:
            continue
        base, past, pp = parts
        for f in (base, past, pp, third_person(base), ing_form(base)):
            add(f, base, "VERB")
    for base in REGULAR_VERBS.split():
        for f in (base,) + regular_forms(base):
            add(f, base, "VERB")

    for w in PREPOSITIONS.split():
        add(w, w, "PREP", override=True)
    for w in DETERMINERS.split():
        add(w, w, "DET", override=True)
    for w in NUMBER_WORDS.split():
        add(w, w, "NUM", override=True)
    for w in OTHER_CLOSED.split():
        add(w, w, "OTHER", override=True)

    for w in NOUNS.split():
        if w in NOUN_IRREGULAR_PLURALS.values():
            continue
        add(w, w, "NOUN")
        add(plural(w), w, "NOUN")
    for sing, plur in NOUN_IRREGULAR_PLURALS.items():
        add(plur, sing, "NOUN", override=True)
    for w in TEMPORAL_NOUNS.split() + MONTHS.split() + WEEKDAYS.split():
        add(w, w, "NOUN", override=True)
        if w not in MONTHS.split():
            add(plural(w), w, "NOUN", override=True)
    add("may", "may", "VERB", override=True)
    for abbr, month in zip("jan feb mar apr jun jul aug sep sept oct nov dec".split(),
                           "january february march april june july august september september october november december".split()):
        add(abbr, month, "NOUN", override=True)
    for w in ADJECTIVES.split() + ORDINALS.split():
        add(w, w, "ADJ", override=True)
    for w in ADVERBS.split():
        add(w, w, "ADV", override=True)
    # words that must keep a specific reading in temporal contexts
    add("second", "second", "NOUN", override=True)
    add("fall", "fall", "VERB", override=True)
    add("spring", "spring", "NOUN", override=True)
    add("as", "as", "PREP", override=True)
    add("that", "that", "DET", override=True)
    add("ago", "ago", "ADV", override=True)
    add("mid", "mid", "ADJ", override=True)
    add("few", "few", "ADJ", override=True)
    return entries


def main():
    entries = build()
    lines = ["# surface<TAB>lemma<TAB>POS  (generated by tools/build_lexicon.py)"]
    for surface in sorted(entries):
        lemma, pos = entries[surface]
        lines.append(f"{surface}\t{lemma}\t{pos}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} entries to {OUT}")


if __name__ == "__main__":
    main()
