dům|NOUN má|VERB v|ADP Karel|PROPN
kniha|NOUN běží|VERB v|ADP Prague|PROPN
strom|NOUN vidí|VERB ale|CCONJ kočka|NOUN čte|VERB
učitel|NOUN má|VERB v|ADP Prague|PROPN
strom|NOUN staví|VERB
zahrada|NOUN staví|VERB nebo|CCONJ kočka|NOUN vidí|VERB
zahrada|NOUN má|VERB nebo|CCONJ kniha|NOUN najde|VERB
kočka|NOUN najde|VERB
cesta|NOUN najde|VERB v|ADP Karel|PROPN nebo|CCONJ dům|NOUN otevírá|VERB ale|CCONJ kočka|NOUN otevírá|VERB
cesta|NOUN vidí|VERB nebo|CCONJ okno|NOUN vidí|VERB
zahrada|NOUN přechází|VERB nebo|CCONJ pes|NOUN přechází|VERB v|ADP Prague|PROPN
město|NOUN staví|VERB
kočka|NOUN staví|VERB v|ADP Prague|PROPN nebo|CCONJ dítě|NOUN najde|VERB
strom|NOUN čte|VERB v|ADP Karel|PROPN a|CCONJ pes|NOUN přechází|VERB v|ADP Anna|PROPN a|CCONJ dům|NOUN má|VERB
dům|NOUN běží|VERB
strom|NOUN má|VERB a|CCONJ řeka|NOUN vidí|VERB
kniha|NOUN běží|VERB v|ADP Prague|PROPN
učitel|NOUN běží|VERB
zahrada|NOUN najde|VERB
kočka|NOUN vidí|VERB nebo|CCONJ cesta|NOUN přechází|VERB v|ADP Anna|PROPN
město|NOUN přechází|VERB v|ADP Prague|PROPN a|CCONJ dítě|NOUN otevírá|VERB ale|CCONJ město|NOUN vidí|VERB v|ADP Anna|PROPN
kniha|NOUN čte|VERB
zahrada|NOUN čte|VERB
řeka|NOUN má|VERB v|ADP Karel|PROPN
kniha|NOUN běží|VERB nebo|CCONJ město|NOUN čte|VERB
okno|NOUN otevírá|VERB a|CCONJ kočka|NOUN čte|VERB v|ADP Karel|PROPN
pes|NOUN přechází|VERB ale|CCONJ kočka|NOUN vidí|VERB
cesta|NOUN staví|VERB
strom|NOUN přechází|VERB a|CCONJ dům|NOUN běží|VERB a|CCONJ učitel|NOUN přechází|VERB
dítě|NOUN staví|VERB ale|CCONJ okno|NOUN staví|VERB
pes|NOUN najde|VERB v|ADP Karel|PROPN
město|NOUN má|VERB v|ADP Karel|PROPN
cesta|NOUN má|VERB
dítě|NOUN staví|VERB v|ADP Anna|PROPN
učitel|NOUN běží|VERB v|ADP Prague|PROPN
učitel|NOUN vidí|VERB ale|CCONJ dítě|NOUN přechází|VERB v|ADP Karel|PROPN
řeka|NOUN čte|VERB
pes|NOUN vidí|VERB ale|CCONJ dítě|NOUN čte|VERB
cesta|NOUN čte|VERB nebo|CCONJ dítě|NOUN čte|VERB v|ADP Prague|PROPN
cesta|NOUN otevírá|VERB a|CCONJ zahrada|NOUN najde|VERB
okno|NOUN otevírá|VERB
okno|NOUN vidí|VERB v|ADP Karel|PROPN
dům|NOUN má|VERB
řeka|NOUN otevírá|VERB nebo|CCONJ dítě|NOUN přechází|VERB
učitel|NOUN najde|VERB v|ADP Prague|PROPN a|CCONJ kočka|NOUN najde|VERB v|ADP Prague|PROPN
zahrada|NOUN najde|VERB ale|CCONJ cesta|NOUN otevírá|VERB
strom|NOUN vidí|VERB
kočka|NOUN čte|VERB
dítě|NOUN má|VERB v|ADP Prague|PROPN
dítě|NOUN čte|VERB
pes|NOUN staví|VERB
řeka|NOUN najde|VERB v|ADP Anna|PROPN a|CCONJ město|NOUN běží|VERB
dítě|NOUN přechází|VERB v|ADP Karel|PROPN
zahrada|NOUN přechází|VERB ale|CCONJ město|NOUN čte|VERB
okno|NOUN staví|VERB a|CCONJ pes|NOUN vidí|VERB nebo|CCONJ dům|NOUN běží|VERB
město|NOUN čte|VERB v|ADP Prague|PROPN a|CCONJ město|NOUN přechází|VERB ale|CCONJ kniha|NOUN čte|VERB v|ADP Prague|PROPN
kniha|NOUN má|VERB
řeka|NOUN běží|VERB v|ADP Karel|PROPN
strom|NOUN běží|VERB v|ADP Karel|PROPN
dům|NOUN má|VERB nebo|CCONJ dům|NOUN najde|VERB
