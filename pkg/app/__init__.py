# Tournament Linkage App
