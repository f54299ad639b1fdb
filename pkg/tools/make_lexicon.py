#!/usr/bin/env python3
"""Regenerate src/speechvis/data/lexicon.tsv.

Scores are assigned per category: concrete picturable nouns score high,
perceptual adjectives and visible actions mid, mental/abstract vocabulary
low. Noun categories also emit naive plural forms. When a word appears in
several categories the first (most concrete) listing wins.
"""

from pathlib import Path

ANIMALS = """
dog cat horse cow pig sheep goat chicken duck goose turkey rabbit deer bear
wolf fox lion tiger elephant giraffe zebra monkey gorilla chimpanzee whale
dolphin shark fish salmon trout tuna octopus squid crab lobster shrimp snail
spider ant bee wasp butterfly moth beetle ladybug dragonfly mosquito fly worm
snake lizard turtle frog toad crocodile alligator eagle hawk owl crow raven
sparrow robin pigeon seagull pelican flamingo penguin ostrich peacock parrot
swan heron stork woodpecker hummingbird bat mouse rat squirrel chipmunk
beaver otter raccoon skunk porcupine hedgehog mole camel llama alpaca donkey
mule buffalo bison moose elk antelope gazelle hippopotamus rhinoceros leopard
cheetah panther jaguar hyena jackal koala kangaroo panda sloth armadillo
anteater walrus seal jellyfish starfish puppy kitten foal lamb calf cub
""".split()

FOODS = """
bread butter cheese milk cream yogurt egg bacon sausage ham steak apple
banana orange lemon lime grape strawberry blueberry raspberry cherry peach
pear plum apricot mango pineapple watermelon melon kiwi coconut fig date
olive tomato potato carrot onion garlic pepper cucumber lettuce spinach
cabbage broccoli cauliflower celery radish beet pumpkin squash corn pea bean
lentil rice pasta noodle pizza burger sandwich taco soup salad stew pie cake
cookie biscuit muffin pancake waffle donut chocolate candy sugar honey jam
syrup salt flour dough cereal oatmeal toast bagel pretzel cracker popcorn
almond walnut peanut cashew pistachio raisin wine beer coffee tea juice soda
lemonade cocktail whiskey pudding custard gravy sauce ketchup mustard
mayonnaise vinegar cinnamon vanilla ginger mint basil parsley
""".split()

NATURE = """
mountain river lake ocean sea beach island cliff valley canyon desert forest
jungle meadow prairie hill volcano glacier iceberg waterfall stream creek
pond swamp marsh lagoon bay gulf peninsula cape reef dune cave cavern rock
boulder stone pebble sand soil mud clay dust horizon sunset sunrise sky cloud
rainbow star moon sun planet comet meteor galaxy aurora lightning thunder
storm rain snow hail sleet frost ice dew fog mist wind breeze hurricane
tornado blizzard drought flood earthquake avalanche landslide tide wave
current whirlpool geyser spring oasis tundra savanna coast shore riverbank
trail path field orchard vineyard garden lawn park wilderness landscape
seashore summit peak ridge slope plateau basin delta estuary fjord water
fire flame smoke ember shadow moonlight sunlight starlight puddle raindrop
snowflake icicle ripple foamcrest driftwood seaweed shell coralreef
""".split()

OBJECTS = """
table chair sofa couch bed mattress pillow blanket sheet curtain carpet rug
lamp candle mirror clock watch picture painting frame vase bowl plate cup
mug glass fork spoon knife pot pan kettle teapot oven stove refrigerator
freezer microwave toaster blender sink faucet bathtub shower toilet towel
soap shampoo toothbrush comb brush scissors razor broom mop bucket sponge
basket box crate barrel jar bottle can tin bag suitcase backpack wallet purse
umbrella key lock door window wall floor ceiling roof stair ladder shelf
cabinet drawer closet wardrobe desk bench stool telephone television radio
computer laptop keyboard screen camera phone tablet printer speaker
headphone battery wire cable plug switch bulb flashlight lantern fan heater
thermometer ruler pencil pen marker crayon chalk eraser notebook paper book
magazine newspaper envelope stamp letter card calendar map globe
""".split()

TOOLS = """
hammer nail screw screwdriver wrench pliers drill saw axe hatchet shovel
spade rake hoe pickaxe chisel clamp vise anvil compass magnet rope chain
hook pulley lever wheel gear bolt washer rivet blade grinder crowbar mallet
trowel wheelbarrow toolbox
""".split()

BODY = """
head face eye eyebrow eyelash ear nose mouth lip tooth tongue chin cheek
forehead jaw neck throat shoulder arm elbow wrist hand palm finger thumb
chest rib stomach belly waist hip spine leg thigh knee ankle foot heel toe
skin hair beard mustache scalp skull brain heart lung liver kidney muscle
bone blood vein fist knuckle
""".split()

CLOTHING = """
shirt blouse sweater jacket coat vest suit dress skirt pants trousers jeans
shorts sock stocking shoe boot sandal slipper sneaker hat cap helmet hood
scarf glove mitten belt tie button zipper pocket collar sleeve cuff apron
robe pajamas uniform costume gown tuxedo raincoat poncho overcoat cardigan
hoodie bracelet necklace earring ring crown tiara badge ribbon
""".split()

VEHICLES = """
car truck bus van taxi ambulance motorcycle bicycle scooter skateboard train
tram subway locomotive wagon carriage cart sled sleigh boat ship yacht canoe
kayak raft ferry sailboat submarine airplane jet helicopter glider balloon
rocket spaceship shuttle tractor bulldozer excavator crane forklift trailer
limousine jeep minivan tank barge tugboat dinghy gondola snowmobile
""".split()

PLACES = """
house home cottage cabin hut tent mansion palace castle tower skyscraper
apartment building office school university college library museum theater
cinema stadium arena gym church temple mosque cathedral chapel monastery
hospital clinic pharmacy store shop market supermarket mall bakery
restaurant cafe bar pub hotel motel inn bank courthouse prison jail station
airport harbor port dock pier bridge tunnel road street avenue alley
sidewalk highway plaza fountain statue monument lighthouse windmill barn
stable silo farmhouse greenhouse warehouse factory mill mine quarry
playground zoo aquarium circus carousel
""".split()

PLANTS = """
tree oak pine maple birch willow cedar elm cypress palm bamboo bush shrub
hedge vine ivy fern moss grass reed cactus flower rose tulip daisy sunflower
lily orchid violet daffodil poppy lavender jasmine carnation petal leaf
branch twig trunk bark root seed sprout bud blossom acorn pinecone mushroom
clover dandelion weed hay straw wheat barley oat rye
""".split()

PEOPLE = """
doctor nurse surgeon dentist teacher professor student farmer fisherman
hunter baker butcher chef cook waiter waitress barber hairdresser tailor
carpenter plumber electrician mechanic engineer pilot sailor captain soldier
policeman firefighter guard judge lawyer clerk cashier librarian painter
sculptor artist musician singer dancer actor actress clown magician juggler
acrobat athlete runner swimmer boxer wrestler king queen prince princess
knight wizard witch pirate cowboy astronaut scientist photographer
journalist priest monk nun baby child toddler boy girl man woman grandmother
grandfather crowd
""".split()

SPORTS_MUSIC = """
ball football basketball baseball soccer tennis golf hockey volleyball rugby
cricket bowling billiards dart racket net goal puck ski snowboard skate
surfboard trophy medal whistle drum guitar piano violin cello flute trumpet
trombone saxophone clarinet harp banjo accordion harmonica tambourine
xylophone organ bell chime stage microphone
""".split()

MATERIALS = """
wood metal iron steel copper brass aluminum lead zinc plastic rubber leather
wool cotton silk linen velvet denim canvas cardboard concrete cement brick
tile marble granite quartz crystal diamond ruby emerald sapphire pearl jade
amber coal charcoal ash wax foam foil gold silver bronze
""".split()

COLORS = """
red blue green yellow purple pink brown black white gray crimson scarlet
turquoise teal magenta indigo beige ivory maroon navy
""".split()

VISUAL_ADJ = """
bright dark shiny glossy sparkling glowing glittering colorful vivid pale
faded transparent striped spotted dotted curly wavy round triangular crooked
jagged smooth rough fuzzy furry hairy muddy dusty rusty wet dry frozen
melted burnt golden silvery wooden metallic giant tiny huge enormous tall
short wide narrow thick thin steep flat
""".split()

VISIBLE_ACTIONS = """
run walk jump leap climb crawl swim dive float sink fall drop throw catch
kick punch push pull lift carry drag swing spin twirl dance eat drink bite
chew lick smile laugh cry frown wink blink stare gaze wave clap point grab
hold hug kiss sit stand kneel bow stretch bend twist shake nod sleep wake
bake pour stir chop slice peel wash scrub sweep dig draw build break cut
tear fold wrap ride drive sail row paddle march skip hop splash juggle
lapping
""".split()

ABSTRACT = """
loyalty freedom justice truth honesty integrity dignity wisdom knowledge
belief faith idea concept theory principle logic reason argument opinion
thought notion hypothesis assumption inference analysis synthesis
abstraction generalization definition meaning purpose intention motive cause
effect consequence result outcome possibility probability chance luck fate
destiny eternity infinity existence reality essence identity consciousness
awareness perception memory imagination creativity intelligence intuition
instinct attitude behavior habit custom tradition culture society community
relationship trust respect honor courage bravery conflict tension harmony
balance chaos structure system process method strategy plan goal objective
priority value worth quality quantity degree level standard criterion rule
law policy regulation duty obligation responsibility authority power control
influence status role function category difference similarity comparison
contrast relation connection association correlation dependence independence
democracy economy inflation philosophy theology ethics morality virtue vice
redemption salvation governance legislation bureaucracy ideology paradigm
rhetoric semantics pragmatism relativity causality legitimacy sovereignty
accountability transparency efficiency productivity sustainability
innovation disruption optimization
""".split()

EMOTIONS = """
happiness sadness anger joy grief sorrow delight pleasure misery despair
gloom cheer glee excitement enthusiasm boredom apathy interest curiosity
surprise shock awe wonder admiration envy jealousy greed pride shame guilt
regret remorse embarrassment humiliation confidence doubt confusion
frustration irritation annoyance rage fury terror panic dread worry concern
relief satisfaction contentment gratitude sympathy empathy compassion pity
disgust contempt hatred affection fondness longing nostalgia loneliness
""".split()

MENTAL_VERBS = """
think know believe understand remember forget learn explain discuss argue
debate agree disagree decide choose consider suppose assume guess estimate
calculate compare analyze evaluate criticize praise suggest recommend advise
warn promise threaten apologize thank greet mention state declare announce
claim deny admit confess insist demand request ask answer reply respond
inquire inform notify report communicate express indicate imply infer
conclude summarize emphasize clarify justify defend persuade convince
negotiate compromise cooperate
""".split()

NEUTRAL = """
thing item matter issue problem solution situation condition circumstance
event occasion occurrence incident experience activity task job trade deal
agreement contract record list note message symbol mark label title name
word sentence phrase paragraph story tale account version detail example
instance case fact information data evidence proof source reference
government announcement people person group team
""".split()

# (category list, score, pluralize?)
CATEGORIES = [
    (ANIMALS, 9, True),
    (FOODS, 9, True),
    (NATURE, 9, True),
    (VEHICLES, 9, True),
    (OBJECTS, 8, True),
    (TOOLS, 8, True),
    (BODY, 8, True),
    (CLOTHING, 8, True),
    (PLACES, 8, True),
    (PLANTS, 8, True),
    (SPORTS_MUSIC, 8, True),
    (PEOPLE, 7, True),
    (MATERIALS, 7, True),
    (COLORS, 7, False),
    (VISUAL_ADJ, 7, False),
    (VISIBLE_ACTIONS, 6, False),
    (NEUTRAL, 5, True),
    (MENTAL_VERBS, 4, False),
    (EMOTIONS, 3, True),
    (ABSTRACT, 2, True),
]


def pluralize(word: str) -> str:
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if word.endswith("y") and len(word) > 2 and word[-2] not in "aeiou":
        return word[:-1] + "ies"
    return word + "s"


def build() -> dict[str, int]:
    out: dict[str, int] = {}
    for words, score, plural in CATEGORIES:
        for w in words:
            w = w.strip().lower()
            if not w.isalpha():
                continue
            out.setdefault(w, score)
            if plural:
                out.setdefault(pluralize(w), score)
    return out


def main() -> None:
    entries = build()
    dest = Path(__file__).resolve().parents[1] / "src/speechvis/data/lexicon.tsv"
    lines = [
        "# speechvis bundled imageability lexicon",
        "# Curated in-repo (see tools/make_lexicon.py): category word lists with",
        "# hand-assigned 1..10 scores; concrete nouns high, abstract terms low.",
        "# Format: word<TAB>score",
    ]
    for word in sorted(entries):
        lines.append(f"{word}\t{entries[word]}")
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} entries to {dest}")


if __name__ == "__main__":
    main()
